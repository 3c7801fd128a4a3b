"""
Snapshot POD: snapshot assembly, truncated basis via SVD, reduce/reconstruct maps.

Snapshot matrices are column-oriented (N x samples) as in the usual POD notation;
trajectories elsewhere are time-major, so assembly transposes.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from reducedsim.core.trajectory import StateTrajectory
from reducedsim.errors import ConfigError, DimensionError, NumericalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnapshotMatrix:
    """
    data: N x S snapshot columns, simulation-major and time-ordered within a simulation.
    column_index: S x 2 integer array of (simulation id, time index), time index 0-based.
    """
    data: np.ndarray = field(repr=False)
    column_index: np.ndarray = field(repr=False)

    @property
    def n_state(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class ReducedBasis:
    """
    Orthonormal basis V (N x r) with the full descending singular value list.
    `mean` is set only when the snapshots were centered before the SVD.
    """
    V: np.ndarray = field(repr=False)
    singular_values: np.ndarray = field(repr=False)
    mean: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        V = np.asarray(self.V, dtype=np.float64)
        if V.ndim != 2 or V.shape[1] < 1:
            raise DimensionError(f"Basis must be N x r with r >= 1, got {V.shape}")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "singular_values", np.asarray(self.singular_values, dtype=np.float64))
        if self.mean is not None:
            object.__setattr__(self, "mean", np.asarray(self.mean, dtype=np.float64))

    @property
    def n_state(self) -> int:
        return self.V.shape[0]

    @property
    def r(self) -> int:
        return self.V.shape[1]

    @property
    def centered(self) -> bool:
        return self.mean is not None


def assemble_snapshots(
    trajectories: Sequence[StateTrajectory],
    sim_ids: Optional[Sequence[int]] = None,
) -> SnapshotMatrix:
    """Stack trajectories column-wise, simulation-major then time"""
    if not trajectories:
        raise DimensionError("Cannot assemble a snapshot matrix from zero trajectories")
    ids = list(sim_ids) if sim_ids is not None else list(range(len(trajectories)))
    if len(ids) != len(trajectories):
        raise DimensionError(f"{len(ids)} simulation ids for {len(trajectories)} trajectories")
    N = trajectories[0].n_state
    for sid, traj in zip(ids, trajectories):
        if traj.n_state != N:
            raise DimensionError(f"Simulation {sid} has N={traj.n_state}, expected N={N}")

    data = np.concatenate([traj.states for traj in trajectories], axis=0).T.copy()
    column_index = np.concatenate([
        np.column_stack([np.full(traj.grid.eta, sid, dtype=np.int64), np.arange(traj.grid.eta, dtype=np.int64)])
        for sid, traj in zip(ids, trajectories)
    ])
    if not np.all(np.isfinite(data)):
        raise NumericalError("Snapshot matrix contains non-finite entries")
    return SnapshotMatrix(data=data, column_index=column_index)


def _fix_signs(U: np.ndarray) -> np.ndarray:
    """Flip columns so each column's largest-magnitude entry is positive"""
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs[None, :]


def _svd(Z: np.ndarray):
    try:
        U, s, _ = scipy.linalg.svd(Z, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        try:
            U, s, _ = scipy.linalg.svd(Z, full_matrices=False, lapack_driver="gesvd")
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"SVD did not converge: {exc}") from exc
    return U, s


def _left_singular(Z: np.ndarray, r: int, gram_ratio: float):
    """First r left singular vectors and all singular values of Z"""
    N, S = Z.shape
    if N * gram_ratio <= S:
        # N x N Gram matrix: its eigenvectors are the left singular vectors
        lam, P = scipy.linalg.eigh(Z @ Z.T)
        order = np.argsort(lam)[::-1]
        s = np.sqrt(np.clip(lam[order], 0.0, None))
        return P[:, order[:r]], s
    if S * gram_ratio <= N:
        # method of snapshots on the S x S correlation matrix
        lam, P = scipy.linalg.eigh(Z.T @ Z)
        order = np.argsort(lam)[::-1]
        s = np.sqrt(np.clip(lam[order], 0.0, None))
        if s[r - 1] > np.sqrt(np.finfo(float).eps) * s[0]:
            U = (Z @ P[:, order[:r]]) / s[:r][None, :]
            Q, _ = np.linalg.qr(U)
            return Q, s
        logger.debug("[POD] near-singular correlation matrix, falling back to direct SVD")
    U, s = _svd(Z)
    return U[:, :r], s


def compute_pod(
    Z: SnapshotMatrix,
    r: int,
    center: bool = False,
    gram_ratio: float = 4.0,
) -> ReducedBasis:
    """Truncated POD basis of rank r; singular values cover all min(N, S) modes"""
    data = Z.data
    d = min(data.shape)
    if not 1 <= r <= d:
        raise ConfigError(f"Reduced dimension r={r} outside [1, {d}] for a {data.shape[0]}x{data.shape[1]} snapshot matrix")

    mean = None
    if center:
        mean = data.mean(axis=1)
        data = data - mean[:, None]

    U, s = _left_singular(data, r, gram_ratio)
    V = _fix_signs(np.ascontiguousarray(U))
    logger.info(
        f"[POD] N={data.shape[0]} samples={data.shape[1]} r={r} "
        f"energy={np.sum(s[:r] ** 2) / max(np.sum(s ** 2), np.finfo(float).tiny):.6f}"
    )
    return ReducedBasis(V=V, singular_values=s[:d], mean=mean)


def reduce(basis: ReducedBasis, z: np.ndarray) -> np.ndarray:
    """Reduced coefficients V^T z for one state (N,) or a trajectory (eta, N)"""
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] != basis.n_state:
        raise DimensionError(f"State has length {z.shape[-1]}, basis expects N={basis.n_state}")
    if basis.mean is not None:
        z = z - basis.mean
    return z @ basis.V


def reconstruct(basis: ReducedBasis, zbar: np.ndarray) -> np.ndarray:
    """Full state V zbar for one coefficient vector (r,) or a trajectory (eta, r)"""
    zbar = np.asarray(zbar, dtype=np.float64)
    if zbar.shape[-1] != basis.r:
        raise DimensionError(f"Coefficients have length {zbar.shape[-1]}, basis has r={basis.r}")
    z = zbar @ basis.V.T
    if basis.mean is not None:
        z = z + basis.mean
    return z


def projection_error(Z: SnapshotMatrix, basis: ReducedBasis) -> float:
    """Frobenius norm of Z - V V^T Z"""
    residual = Z.data.T - reconstruct(basis, reduce(basis, Z.data.T))
    return float(np.linalg.norm(residual))
