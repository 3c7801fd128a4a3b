"""
Time-resolved relative scores s(t) = 1 - |ref(t) - approx(t)| / |ref(t)|.

Where |ref(t)| = 0 the score is 1 if the approximation is zero as well; otherwise the
step is flagged, carries NaN, and is left out of means.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory, TimeGrid
from reducedsim.errors import ConfigError, DimensionError
from reducedsim.reduction.pod import reconstruct, reduce
from reducedsim.rollout.bundle import SurrogateBundle
from reducedsim.rollout.online import rollout_reduced

FIRST_SECOND = (0.0, 1.0)


@dataclass(frozen=True)
class ScoreSeries:
    grid: TimeGrid
    values: np.ndarray = field(repr=False)
    flagged: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.values.shape != (self.grid.eta,) or self.flagged.shape != (self.grid.eta,):
            raise DimensionError(f"Score series must have {self.grid.eta} entries")

    @property
    def n_flagged(self) -> int:
        return int(np.count_nonzero(self.flagged))


def _as_array(z: Union[StateTrajectory, np.ndarray]) -> np.ndarray:
    if isinstance(z, StateTrajectory):
        return z.states
    z = np.asarray(z, dtype=np.float64)
    return z[:, None] if z.ndim == 1 else z


def relative_score(
    ref: Union[StateTrajectory, np.ndarray],
    approx: Union[StateTrajectory, np.ndarray],
    grid: Optional[TimeGrid] = None,
) -> ScoreSeries:
    """Per-step relative score of approx against ref, both (eta, n)"""
    grids = [z.grid for z in (ref, approx) if isinstance(z, StateTrajectory)]
    if grid is not None:
        grids.append(grid)
    if any(g != grids[0] for g in grids):
        raise DimensionError(f"Grid mismatch between reference and approximation: {grids}")
    a = _as_array(ref)
    b = _as_array(approx)
    if a.shape != b.shape:
        raise DimensionError(f"Reference shape {a.shape} differs from approximation shape {b.shape}")
    if grids:
        grid = grids[0]
        if grid.eta != a.shape[0]:
            raise DimensionError(f"Series has {a.shape[0]} steps, grid has eta={grid.eta}")
    else:
        grid = TimeGrid(t_start=0.0, dt=1.0, eta=a.shape[0])

    ref_norm = np.linalg.norm(a, axis=1)
    diff_norm = np.linalg.norm(a - b, axis=1)
    zero_ref = ref_norm == 0.0
    values = 1.0 - diff_norm / np.where(zero_ref, 1.0, ref_norm)
    values[zero_ref] = np.where(diff_norm[zero_ref] == 0.0, 1.0, np.nan)
    flagged = zero_ref & (diff_norm > 0.0)
    return ScoreSeries(grid=grid, values=values, flagged=flagged)


def mean_score(series: ScoreSeries, window: Optional[Tuple[float, float]] = None) -> float:
    """Mean over unflagged steps, optionally restricted to times in [t_from, t_to]"""
    if window is None:
        idx = np.arange(series.grid.eta)
    else:
        idx = series.grid.index_range(*window)
    idx = idx[~series.flagged[idx]]
    if idx.size == 0:
        raise ConfigError(f"No scored steps in window {window}")
    return float(np.mean(series.values[idx]))


def first_second(grid: TimeGrid) -> Tuple[float, float]:
    """Window covering the first simulated second of a grid"""
    return grid.t_start + FIRST_SECOND[0], grid.t_start + FIRST_SECOND[1]


@dataclass(frozen=True)
class ScoreTriplet:
    rec: ScoreSeries
    regr: ScoreSeries
    approx: ScoreSeries
    predicted: np.ndarray = field(repr=False)


def score_triplet(
    z_test: StateTrajectory,
    bundle: SurrogateBundle,
    mu: ParameterTrajectory,
    predicted: Optional[np.ndarray] = None,
) -> ScoreTriplet:
    """
    Reconstruction (z vs V V^T z), regression (V^T z vs rolled-out zbar) and
    approximation (z vs V zbar) scores. `predicted` skips the rollout when given.
    """
    if mu.grid != z_test.grid:
        raise DimensionError(f"Parameter grid {mu.grid} differs from test grid {z_test.grid}")
    basis = bundle.basis
    if predicted is None:
        predicted = rollout_reduced(bundle, z_test.states[0], mu)
    true_reduced = reduce(basis, z_test.states)
    grid = z_test.grid
    return ScoreTriplet(
        rec=relative_score(z_test.states, reconstruct(basis, true_reduced), grid),
        regr=relative_score(true_reduced, predicted, grid),
        approx=relative_score(z_test.states, reconstruct(basis, predicted), grid),
        predicted=predicted,
    )
