"""
Trajectory containers: time grids, parameter (input) trajectories and state trajectories.

Arrays are time-major: row i holds the vector at grid point t_i.
"""
from dataclasses import dataclass, field

import numpy as np

from reducedsim.errors import ConfigError, DimensionError, NumericalError


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_i = t_start + (i-1)*dt, i = 1..eta"""
    t_start: float
    dt: float
    eta: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError(f"TimeGrid dt must be > 0, got {self.dt}")
        if self.eta < 1:
            raise ConfigError(f"TimeGrid eta must be >= 1, got {self.eta}")

    @property
    def points(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.eta, dtype=np.float64)

    @property
    def t_end(self) -> float:
        return self.t_start + self.dt * (self.eta - 1)

    @property
    def duration(self) -> float:
        """Simulated time t_eta - t_1"""
        return self.dt * (self.eta - 1)

    def index_range(self, t_from: float, t_to: float) -> np.ndarray:
        """Indices of grid points inside the closed interval [t_from, t_to]"""
        if t_to < t_from:
            raise ConfigError(f"Empty time window [{t_from}, {t_to}]")
        pts = self.points
        tol = 1e-9 * self.dt
        return np.nonzero((pts >= t_from - tol) & (pts <= t_to + tol))[0]


@dataclass(frozen=True)
class ParameterTrajectory:
    """Input trajectory mu(t) with values of shape (eta, l)"""
    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] < 1:
            raise DimensionError(f"Parameter values must have shape (eta, l>=1), got {values.shape}")
        if values.shape[0] != self.grid.eta:
            raise DimensionError(
                f"Parameter trajectory has {values.shape[0]} samples but grid has eta={self.grid.eta}"
            )
        object.__setattr__(self, "values", values)

    @property
    def n_channels(self) -> int:
        return self.values.shape[1]

    def scaled(self, alpha: float) -> "ParameterTrajectory":
        return ParameterTrajectory(self.grid, alpha * self.values)

    def at(self, t: float) -> np.ndarray:
        """Linear interpolation of mu at time t, clamped to the grid ends"""
        s = (t - self.grid.t_start) / self.grid.dt
        if s <= 0:
            return self.values[0]
        last = self.grid.eta - 1
        if s >= last:
            return self.values[last]
        i = int(np.floor(s))
        w = s - i
        if w == 0.0:
            return self.values[i]
        return (1.0 - w) * self.values[i] + w * self.values[i + 1]


@dataclass(frozen=True)
class StateTrajectory:
    """Full-order states z(t) with shape (eta, N)"""
    grid: TimeGrid
    states: np.ndarray = field(repr=False)

    def __post_init__(self):
        states = np.asarray(self.states, dtype=np.float64)
        if states.ndim != 2 or states.shape[1] < 1:
            raise DimensionError(f"States must have shape (eta, N>=1), got {states.shape}")
        if states.shape[0] != self.grid.eta:
            raise DimensionError(
                f"State trajectory has {states.shape[0]} samples but grid has eta={self.grid.eta}"
            )
        if not np.all(np.isfinite(states)):
            raise NumericalError("State trajectory contains non-finite entries")
        object.__setattr__(self, "states", states)

    @property
    def n_state(self) -> int:
        return self.states.shape[1]
