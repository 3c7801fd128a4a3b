"""
Windowed supervised dataset.

For simulation j and step t (0-based, t = 0..eta_j-2) one sample pairs the inputs
[zbar; mu] at steps max(0, t-n_w+1)..t with the target zbar_{t+1} - zbar_t. The window
ends at the current step, matching the online loop. Short prefixes stay as
variable-length samples.

Storage is left-padded: row n_w-1 is always the current step, padding rows are zero and
masked out.
"""
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from reducedsim.core.trajectory import ParameterTrajectory
from reducedsim.errors import ConfigError, DimensionError

if TYPE_CHECKING:
    from reducedsim.dataset.normalization import Normalization


@dataclass(frozen=True)
class WindowSample:
    """inputs: (w, r+l) rows oldest to newest; target: (r,); origin: (simulation id, step)"""
    inputs: np.ndarray = field(repr=False)
    valid_length: int
    target: np.ndarray = field(repr=False)
    origin: Tuple[int, int]


@dataclass(frozen=True)
class Batch:
    """Padded mini-batch: inputs (B, T, F), mask (B, T), targets (B, r)"""
    inputs: np.ndarray
    mask: np.ndarray
    targets: Optional[np.ndarray] = None
    origins: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return self.inputs.shape[0]


@dataclass(frozen=True)
class WindowedDataset:
    inputs: np.ndarray = field(repr=False)
    lengths: np.ndarray = field(repr=False)
    targets: np.ndarray = field(repr=False)
    origins: np.ndarray = field(repr=False)
    n_w: int
    r: int
    l: int
    normalization: Optional["Normalization"] = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.inputs.shape[0]

    def sample(self, i: int) -> WindowSample:
        w = int(self.lengths[i])
        return WindowSample(
            inputs=self.inputs[i, self.n_w - w:].copy(),
            valid_length=w,
            target=self.targets[i].copy(),
            origin=(int(self.origins[i, 0]), int(self.origins[i, 1])),
        )

    @property
    def samples(self) -> List[WindowSample]:
        return [self.sample(i) for i in range(len(self))]

    def batch(self, indices: Union[Sequence[int], np.ndarray]) -> Batch:
        idx = np.asarray(indices, dtype=np.int64)
        positions = np.arange(self.n_w)[None, :]
        mask = positions >= (self.n_w - self.lengths[idx])[:, None]
        return Batch(
            inputs=self.inputs[idx],
            mask=mask,
            targets=self.targets[idx],
            origins=self.origins[idx],
        )

    def iter_batches(self, batch_size: int, rng: Optional[np.random.Generator] = None) -> Iterator[Batch]:
        """Mini-batches in index order, or in a shuffled order when rng is given"""
        if batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {batch_size}")
        order = rng.permutation(len(self)) if rng is not None else np.arange(len(self))
        for start in range(0, len(self), batch_size):
            yield self.batch(order[start:start + batch_size])

    def with_normalization(self, normalization) -> "WindowedDataset":
        return replace(self, normalization=normalization)


def _as_values(p: Union[ParameterTrajectory, np.ndarray]) -> np.ndarray:
    if isinstance(p, ParameterTrajectory):
        return p.values
    values = np.asarray(p, dtype=np.float64)
    return values[:, None] if values.ndim == 1 else values


def build_windows(
    reduced: Sequence[np.ndarray],
    params: Sequence[Union[ParameterTrajectory, np.ndarray]],
    n_w: int,
    sim_ids: Optional[Sequence[int]] = None,
) -> WindowedDataset:
    """Build the windowed dataset from reduced trajectories (eta_j, r) and inputs (eta_j, l)"""
    if n_w < 1:
        raise ConfigError(f"Window length n_w must be >= 1, got {n_w}")
    if len(reduced) != len(params):
        raise DimensionError(f"{len(reduced)} reduced trajectories but {len(params)} parameter trajectories")
    if not reduced:
        raise DimensionError("Cannot build windows from zero trajectories")
    ids = list(sim_ids) if sim_ids is not None else list(range(len(reduced)))
    if len(ids) != len(reduced):
        raise DimensionError(f"{len(ids)} simulation ids for {len(reduced)} trajectories")

    zs = [np.asarray(z, dtype=np.float64) for z in reduced]
    mus = [_as_values(p) for p in params]
    r = zs[0].shape[1]
    l = mus[0].shape[1]
    for sid, z, mu in zip(ids, zs, mus):
        if z.ndim != 2 or z.shape[1] != r:
            raise DimensionError(f"Simulation {sid}: reduced trajectory shape {z.shape}, expected (eta, {r})")
        if mu.shape[1] != l:
            raise DimensionError(f"Simulation {sid}: parameter shape {mu.shape}, expected (eta, {l})")
        if z.shape[0] != mu.shape[0]:
            raise DimensionError(
                f"Simulation {sid}: {z.shape[0]} reduced states but {mu.shape[0]} parameter samples"
            )
        if z.shape[0] < 2:
            raise DimensionError(f"Simulation {sid}: trajectory length {z.shape[0]} < 2")

    total = sum(z.shape[0] - 1 for z in zs)
    inputs = np.zeros((total, n_w, r + l))
    lengths = np.empty(total, dtype=np.int64)
    targets = np.empty((total, r))
    origins = np.empty((total, 2), dtype=np.int64)

    k = 0
    for sid, z, mu in zip(ids, zs, mus):
        features = np.hstack([z, mu])
        diffs = np.diff(z, axis=0)
        for t in range(z.shape[0] - 1):
            lo = max(0, t - n_w + 1)
            w = t + 1 - lo
            inputs[k, n_w - w:] = features[lo:t + 1]
            lengths[k] = w
            targets[k] = diffs[t]
            origins[k] = (sid, t)
            k += 1

    return WindowedDataset(
        inputs=inputs, lengths=lengths, targets=targets, origins=origins, n_w=n_w, r=r, l=l
    )


def make_batch(samples: Sequence[WindowSample], n_w: Optional[int] = None) -> Batch:
    """Left-pad a list of samples into one masked batch"""
    if not samples:
        raise ConfigError("Batch must contain at least one sample")
    T = n_w or max(s.valid_length for s in samples)
    F = samples[0].inputs.shape[1]
    inputs = np.zeros((len(samples), T, F))
    mask = np.zeros((len(samples), T), dtype=bool)
    for b, s in enumerate(samples):
        w = s.valid_length
        if w > T:
            raise DimensionError(f"Sample with valid_length {w} exceeds window length {T}")
        inputs[b, T - w:] = s.inputs[-w:]
        mask[b, T - w:] = True
    return Batch(
        inputs=inputs,
        mask=mask,
        targets=np.stack([s.target for s in samples]),
        origins=np.asarray([s.origin for s in samples], dtype=np.int64),
    )
