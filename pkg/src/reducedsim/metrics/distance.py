"""
Euclidean node distances.

States are node-major: z = (q_1, ..., q_n_node) with q_m in R^dims_per_node, so
devectorize is a plain reshape to (..., n_node, dims_per_node).
"""
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from reducedsim.core.trajectory import StateTrajectory
from reducedsim.errors import DimensionError


def devectorize(z: np.ndarray, dims_per_node: int) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if dims_per_node < 1 or z.shape[-1] % dims_per_node != 0:
        raise DimensionError(f"State length {z.shape[-1]} is not divisible by dims_per_node={dims_per_node}")
    return z.reshape(z.shape[:-1] + (z.shape[-1] // dims_per_node, dims_per_node))


def vectorize(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=np.float64)
    return q.reshape(q.shape[:-2] + (q.shape[-2] * q.shape[-1],))


@dataclass(frozen=True)
class NodeDistances:
    """distances: (eta, n_node) Euclidean distance per time step and node"""
    distances: np.ndarray = field(repr=False)

    @property
    def max(self) -> float:
        return float(np.max(self.distances))

    @property
    def argmax(self):
        """(time index, node index) of the largest distance"""
        t, m = np.unravel_index(np.argmax(self.distances), self.distances.shape)
        return int(t), int(m)


def node_distance(
    ref: Union[StateTrajectory, np.ndarray],
    approx: Union[StateTrajectory, np.ndarray],
    dims_per_node: int,
) -> NodeDistances:
    a = ref.states if isinstance(ref, StateTrajectory) else np.atleast_2d(np.asarray(ref, dtype=np.float64))
    b = approx.states if isinstance(approx, StateTrajectory) else np.atleast_2d(np.asarray(approx, dtype=np.float64))
    if a.shape != b.shape:
        raise DimensionError(f"Reference shape {a.shape} differs from approximation shape {b.shape}")
    diff = devectorize(a - b, dims_per_node)
    return NodeDistances(distances=np.linalg.norm(diff, axis=-1))
