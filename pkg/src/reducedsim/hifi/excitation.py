"""
Seeded parameter-set generation.

Each channel is a sum of low-frequency sinusoids (shifted to start at zero) plus an
optional ramp-and-hold pulse, rescaled so |mu - bias| never exceeds the configured amplitude.
"""
import logging
from typing import List, Optional

import numpy as np

from reducedsim.core.trajectory import ParameterTrajectory, TimeGrid
from reducedsim.core.types import ExcitationSpec, GridConfig
from reducedsim.errors import ConfigError

logger = logging.getLogger(__name__)


def _trapezoid(tau: np.ndarray, start: float, ramp: float, hold: float) -> np.ndarray:
    up = np.clip((tau - start) / ramp, 0.0, 1.0)
    down = np.clip((tau - (start + ramp + hold)) / ramp, 0.0, 1.0)
    return up - down


def _channel(rng: np.random.Generator, tau: np.ndarray, spec: ExcitationSpec) -> np.ndarray:
    signal = np.zeros_like(tau)
    for _ in range(spec.n_sines):
        weight = rng.uniform(0.0, 1.0)
        freq = rng.uniform(spec.freq_min, spec.freq_max)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        signal += weight * (np.sin(2.0 * np.pi * freq * tau + phase) - np.sin(phase))

    has_pulse = rng.uniform() < spec.pulse_probability
    start = rng.uniform(0.0, tau[-1]) if tau[-1] > 0 else 0.0
    ramp = rng.uniform(*spec.pulse_ramp)
    hold = rng.uniform(*spec.pulse_hold)
    height = rng.uniform(-1.0, 1.0)
    if has_pulse:
        signal += height * max(spec.n_sines, 1) * _trapezoid(tau, start, ramp, hold)

    gain = rng.uniform(0.3, 1.0)
    peak = np.max(np.abs(signal))
    if peak == 0.0 or spec.amplitude == 0.0:
        return np.zeros_like(tau)
    return np.clip(spec.amplitude * gain * signal / peak, -spec.amplitude, spec.amplitude)


def generate_parameter_set(
    count: int,
    seed: int,
    spec: ExcitationSpec,
    grid: Optional[GridConfig] = None,
) -> List[ParameterTrajectory]:
    """Create `count` reproducible excitation trajectories with l = spec.n_channels"""
    if count < 1:
        raise ConfigError(f"Parameter set size must be >= 1, got {count}")
    grid = grid or GridConfig()
    bias = np.asarray(spec.bias if spec.bias else [0.0] * spec.n_channels, dtype=np.float64)

    rng = np.random.default_rng(seed)
    lo, hi = grid.duration
    trajectories = []
    for _ in range(count):
        duration = rng.uniform(lo, hi)
        eta = int(round(duration / grid.dt)) + 1
        tgrid = TimeGrid(t_start=grid.t_start, dt=grid.dt, eta=eta)
        tau = tgrid.points - grid.t_start
        values = np.column_stack([_channel(rng, tau, spec) for _ in range(spec.n_channels)])
        trajectories.append(ParameterTrajectory(grid=tgrid, values=values + bias[None, :]))

    logger.info(f"[GENERATE] {count} parameter trajectories, l={spec.n_channels}, seed={seed}")
    return trajectories
