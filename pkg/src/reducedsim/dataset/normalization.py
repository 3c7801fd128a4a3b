"""Per-feature z-score normalization fitted on the training split."""
from dataclasses import dataclass, field

import numpy as np

from reducedsim.errors import ConfigError, DimensionError

SCALE_FLOOR = 1e-8


@dataclass(frozen=True)
class Normalization:
    """Shift/scale vectors for reduced states, parameters and reduced differences"""
    z_shift: np.ndarray = field(repr=False)
    z_scale: np.ndarray = field(repr=False)
    mu_shift: np.ndarray = field(repr=False)
    mu_scale: np.ndarray = field(repr=False)
    dz_shift: np.ndarray = field(repr=False)
    dz_scale: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("z_scale", "mu_scale", "dz_scale"):
            if np.any(np.asarray(getattr(self, name)) <= 0):
                raise ConfigError(f"Normalization {name} must be strictly positive")
        if len(self.z_shift) != len(self.dz_shift):
            raise DimensionError("z and dz normalization vectors differ in length")

    @classmethod
    def identity(cls, r: int, l: int) -> "Normalization":
        return cls(
            z_shift=np.zeros(r), z_scale=np.ones(r),
            mu_shift=np.zeros(l), mu_scale=np.ones(l),
            dz_shift=np.zeros(r), dz_scale=np.ones(r),
        )

    @property
    def r(self) -> int:
        return len(self.z_shift)

    @property
    def l(self) -> int:
        return len(self.mu_shift)

    @property
    def input_shift(self) -> np.ndarray:
        return np.concatenate([self.z_shift, self.mu_shift])

    @property
    def input_scale(self) -> np.ndarray:
        return np.concatenate([self.z_scale, self.mu_scale])

    def apply_inputs(self, x: np.ndarray) -> np.ndarray:
        """Normalize [zbar; mu] feature rows (last axis has r+l entries)"""
        return (x - self.input_shift) / self.input_scale

    def invert_inputs(self, x: np.ndarray) -> np.ndarray:
        return x * self.input_scale + self.input_shift

    def apply_targets(self, dz: np.ndarray) -> np.ndarray:
        return (dz - self.dz_shift) / self.dz_scale

    def invert_targets(self, y: np.ndarray) -> np.ndarray:
        return y * self.dz_scale + self.dz_shift

    def vectors(self):
        """The six vectors in storage order"""
        return (self.z_shift, self.z_scale, self.mu_shift, self.mu_scale, self.dz_shift, self.dz_scale)


def fit_normalization(dataset) -> Normalization:
    """
    Mean/std statistics from a training WindowedDataset.

    Input statistics use each sample's current step, so every (simulation, step) point
    counts once; difference statistics use the targets.
    """
    if len(dataset) == 0:
        raise ConfigError("Cannot fit normalization on an empty training set")
    current = dataset.inputs[:, -1, :]
    z = current[:, :dataset.r]
    mu = current[:, dataset.r:]
    dz = dataset.targets

    def stats(a: np.ndarray):
        return a.mean(axis=0), np.maximum(a.std(axis=0), SCALE_FLOOR)

    z_shift, z_scale = stats(z)
    mu_shift, mu_scale = stats(mu)
    dz_shift, dz_scale = stats(dz)
    return Normalization(z_shift, z_scale, mu_shift, mu_scale, dz_shift, dz_scale)
