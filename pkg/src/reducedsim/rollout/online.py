"""
Online phase: autoregressive prediction of reduced states and projection to full space.

At step t (0-based) the predictor sees the rows max(0, t-n_w+1)..t of [zbar; mu], i.e.
min(t+1, n_w) rows ending at the current step, including the current mu.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory
from reducedsim.errors import ConfigError, DimensionError, RolloutDivergenceError
from reducedsim.reduction.pod import reconstruct, reduce
from reducedsim.rollout.bundle import SurrogateBundle

logger = logging.getLogger(__name__)


def _check_inputs(bundle: SurrogateBundle, z1: np.ndarray, mu: ParameterTrajectory) -> np.ndarray:
    z1 = np.asarray(z1, dtype=np.float64).ravel()
    if z1.size != bundle.n_state:
        raise DimensionError(f"Initial state has {z1.size} entries, basis expects N={bundle.n_state}")
    if mu.n_channels != bundle.l:
        raise DimensionError(f"Parameter trajectory has {mu.n_channels} channels, surrogate expects {bundle.l}")
    return z1


def rollout_reduced(bundle: SurrogateBundle, z1: np.ndarray, mu: ParameterTrajectory) -> np.ndarray:
    """Predicted reduced trajectory (eta, r) on the grid of mu, starting from V^T z1"""
    z1 = _check_inputs(bundle, z1, mu)
    eta, r, n_w = mu.grid.eta, bundle.r, bundle.n_w
    predictor = bundle.predictor

    features = np.empty((eta, r + bundle.l))
    features[:, r:] = mu.values
    features[0, :r] = reduce(bundle.basis, z1)
    for t in range(eta - 1):
        window = features[max(0, t - n_w + 1):t + 1]
        step = features[t, :r] + predictor.predict(window, t)
        if not np.all(np.isfinite(step)):
            raise RolloutDivergenceError(step=t + 1)
        features[t + 1, :r] = step
    return features[:, :r].copy()


def rollout_full(bundle: SurrogateBundle, z1: np.ndarray, mu: ParameterTrajectory) -> StateTrajectory:
    """Full-space prediction V zbar(t) for every grid point"""
    zbar = rollout_reduced(bundle, z1, mu)
    return StateTrajectory(grid=mu.grid, states=reconstruct(bundle.basis, zbar))


def one_step_predictions(bundle: SurrogateBundle, reduced: np.ndarray, mu: ParameterTrajectory) -> np.ndarray:
    """
    Teacher-forced reduced states (eta, r): row 0 is reduced[0], row t+1 is
    reduced[t] plus the prediction from the true window ending at t.
    """
    reduced = np.asarray(reduced, dtype=np.float64)
    if reduced.shape != (mu.grid.eta, bundle.r):
        raise DimensionError(f"Reduced trajectory has shape {reduced.shape}, expected {(mu.grid.eta, bundle.r)}")
    if mu.n_channels != bundle.l:
        raise DimensionError(f"Parameter trajectory has {mu.n_channels} channels, surrogate expects {bundle.l}")
    features = np.hstack([reduced, mu.values])
    out = np.empty_like(reduced)
    out[0] = reduced[0]
    for t in range(mu.grid.eta - 1):
        window = features[max(0, t - bundle.n_w + 1):t + 1]
        out[t + 1] = reduced[t] + bundle.predictor.predict(window, t)
    return out


@dataclass(frozen=True)
class RealtimeStats:
    """Wall-clock time over simulated time, one ratio per repetition"""
    ratios: List[float] = field(default_factory=list)

    @property
    def min(self) -> float:
        return float(np.min(self.ratios))

    @property
    def median(self) -> float:
        return float(np.median(self.ratios))


def time_realtime_ratio(run: Callable[[], object], simulated: float, repetitions: int) -> RealtimeStats:
    """Time `run` repeatedly and divide by the simulated time span"""
    if repetitions < 1:
        raise ConfigError(f"repetitions must be >= 1, got {repetitions}")
    if not simulated > 0:
        raise ConfigError(f"Simulated time must be > 0, got {simulated}")
    ratios = []
    for _ in range(repetitions):
        start = time.perf_counter()
        run()
        ratios.append((time.perf_counter() - start) / simulated)
    return RealtimeStats(ratios=ratios)


def measure_realtime_ratio(
    bundle: SurrogateBundle,
    z1: np.ndarray,
    mu: ParameterTrajectory,
    repetitions: int = 5,
) -> RealtimeStats:
    """Real-time ratio of rollout_full alone"""
    if mu.grid.eta < 2:
        raise ConfigError("Real-time ratio needs a grid with at least two points")
    stats = time_realtime_ratio(lambda: rollout_full(bundle, z1, mu), mu.grid.duration, repetitions)
    logger.debug(f"[ROLLOUT] realtime ratio min={stats.min:.4g} median={stats.median:.4g}")
    return stats
