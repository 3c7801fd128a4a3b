"""
Full-order reference model: a damped spring network with cubic stiffening whose support
is accelerated by the parameter trajectory mu(t).

Nodes move relative to the support. Each displacement direction d is driven by channel d
of mu (inertial load -m*mu_d). The state vector is the node-major vectorization of the
nodal displacements: z = (q_1, ..., q_n_node), q_m in R^dims_per_node.

The integrator is classical fixed-step RK4 with `substeps` steps per output interval;
mu is interpolated linearly between grid points.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory, TimeGrid
from reducedsim.core.types import HifiModelConfig
from reducedsim.errors import ConfigError, DimensionError, IntegrationDivergenceError, NumericalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpringNetwork:
    """
    Edge incidence operator and per-edge coefficients.

    Elongations are e = D x; nodal forces are -D^T (k e + k3 e^3 + c de/dt).
    Support springs are rows with a single +1 entry.
    """
    D: sp.csr_matrix
    Dt: sp.csr_matrix
    k: np.ndarray
    c: np.ndarray
    k3: float

    @property
    def n_edges(self) -> int:
        return self.D.shape[0]


def build_network(config: HifiModelConfig) -> SpringNetwork:
    """Assemble the incidence operator for the configured topology"""
    n = config.n_node
    rows: List[int] = []
    cols: List[int] = []
    vals: List[float] = []
    k: List[float] = []
    c: List[float] = []

    def couple(i: int, j: int):
        e = len(k)
        rows.extend((e, e))
        cols.extend((i, j))
        vals.extend((-1.0, 1.0))
        k.append(config.stiffness)
        c.append(config.damping)

    def anchor(i: int, stiffness: float, damping: float):
        e = len(k)
        rows.append(e)
        cols.append(i)
        vals.append(1.0)
        k.append(stiffness)
        c.append(damping)

    if config.topology == "chain":
        anchor(0, config.stiffness, config.damping)
        for i in range(n - 1):
            couple(i, i + 1)
    else:
        width = config.grid_width
        for i in range(min(width, n)):
            anchor(i, config.stiffness, config.damping)
        for i in range(n):
            if (i + 1) % width != 0 and i + 1 < n:
                couple(i, i + 1)
            if i + width < n:
                couple(i, i + width)

    if config.ground_stiffness > 0 or config.ground_damping > 0:
        for i in range(n):
            anchor(i, config.ground_stiffness, config.ground_damping)

    D = sp.csr_matrix((vals, (rows, cols)), shape=(len(k), n))
    return SpringNetwork(
        D=D,
        Dt=D.T.tocsr(),
        k=np.asarray(k, dtype=np.float64),
        c=np.asarray(c, dtype=np.float64),
        k3=float(config.nonlinearity_coeff),
    )


def internal_forces(net: SpringNetwork, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Spring and damper forces on each node; x, v have shape (n_node, dims)"""
    e = net.D @ x
    edot = net.D @ v
    s = net.k[:, None] * e + net.c[:, None] * edot
    if net.k3 != 0.0:
        s = s + net.k3 * e ** 3
    return -(net.Dt @ s)


def _split_initial(config: HifiModelConfig, z1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    z1 = np.asarray(z1, dtype=np.float64).ravel()
    N = config.n_state
    if z1.size == N:
        x0, v0 = z1, np.zeros(N)
    elif z1.size == 2 * N:
        x0, v0 = z1[:N], z1[N:]
    else:
        raise DimensionError(f"Initial state has {z1.size} entries, expected N={N} or 2N={2 * N}")
    if not (np.all(np.isfinite(x0)) and np.all(np.isfinite(v0))):
        raise ConfigError("Initial state must be finite")
    shape = (config.n_node, config.dims_per_node)
    return x0.reshape(shape).copy(), v0.reshape(shape).copy()


def integrate(
    config: HifiModelConfig,
    mu: ParameterTrajectory,
    z1: np.ndarray,
    grid: TimeGrid,
    network: Optional[SpringNetwork] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate the network over `grid` and return (displacements, velocities), each (eta, N).

    z1 holds N displacements (velocities start at zero) or 2N entries
    (displacement block, then velocity block).
    """
    if mu.grid != grid:
        raise DimensionError(f"Parameter grid {mu.grid} does not match simulation grid {grid}")
    if mu.n_channels != config.dims_per_node:
        raise DimensionError(
            f"Parameter trajectory has {mu.n_channels} channels, model expects one per "
            f"displacement direction ({config.dims_per_node})"
        )
    net = network or build_network(config)
    x, v = _split_initial(config, z1)
    inv_m = 1.0 / config.mass
    h = grid.dt / config.substeps

    def rhs(t: float, x: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        a = internal_forces(net, x, v) * inv_m - mu.at(t)[None, :]
        return v, a

    N = config.n_state
    X = np.empty((grid.eta, N))
    V = np.empty((grid.eta, N))
    X[0] = x.ravel()
    V[0] = v.ravel()
    times = grid.points
    for i in range(1, grid.eta):
        t0 = times[i - 1]
        for s in range(config.substeps):
            t = t0 + s * h
            k1x, k1v = rhs(t, x, v)
            k2x, k2v = rhs(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v)
            k3x, k3v = rhs(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v)
            k4x, k4v = rhs(t + h, x + h * k3x, v + h * k3v)
            x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(v))):
            raise IntegrationDivergenceError(step=i + 1)
        X[i] = x.ravel()
        V[i] = v.ravel()
    return X, V


def simulate(
    config: HifiModelConfig,
    mu: ParameterTrajectory,
    z1: np.ndarray,
    grid: TimeGrid,
) -> StateTrajectory:
    """Flow map z(t) = F(t, mu, z1) sampled on `grid` (displacements only)"""
    X, _ = integrate(config, mu, z1, grid)
    return StateTrajectory(grid=grid, states=X)


def _simulate_one(args) -> StateTrajectory:
    config, mu, z1 = args
    return simulate(config, mu, z1, mu.grid)


def simulate_many(
    config: HifiModelConfig,
    params: Sequence[ParameterTrajectory],
    z1: np.ndarray,
    workers: int = 1,
) -> List[StateTrajectory]:
    """Simulate every parameter trajectory; results keep input order"""
    jobs = [(config, mu, z1) for mu in params]
    if workers <= 1 or len(jobs) <= 1:
        results = []
        for j, job in enumerate(jobs):
            results.append(_simulate_one(job))
            logger.debug(f"[SIMULATE] {j + 1}/{len(jobs)} eta={job[1].grid.eta}")
        return results
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_simulate_one, jobs))


def mechanical_energy(config: HifiModelConfig, x: np.ndarray, v: np.ndarray,
                      network: Optional[SpringNetwork] = None) -> float:
    """Kinetic plus elastic energy for one state (x, v of length N)"""
    net = network or build_network(config)
    shape = (config.n_node, config.dims_per_node)
    x = np.asarray(x, dtype=np.float64).reshape(shape)
    v = np.asarray(v, dtype=np.float64).reshape(shape)
    e = net.D @ x
    elastic = 0.5 * np.sum(net.k[:, None] * e ** 2) + 0.25 * net.k3 * np.sum(e ** 4)
    kinetic = 0.5 * config.mass * np.sum(v ** 2)
    return float(kinetic + elastic)


def static_equilibrium(
    config: HifiModelConfig,
    load: np.ndarray,
    tol: float = 1e-13,
    max_iter: int = 50,
) -> np.ndarray:
    """
    Displacements at rest under a constant support acceleration `load` (one value per
    direction). Newton iteration on the sparse tangent stiffness, one solve per direction.
    """
    load = np.asarray(load, dtype=np.float64).ravel()
    if load.size != config.dims_per_node:
        raise DimensionError(f"Load has {load.size} entries, expected {config.dims_per_node}")
    x = np.zeros((config.n_node, config.dims_per_node))
    if not np.any(load):
        return x.ravel()

    net = build_network(config)
    target = config.mass * load
    for d in range(config.dims_per_node):
        xd = np.zeros(config.n_node)
        for _ in range(max_iter):
            e = net.D @ xd
            residual = -(net.Dt @ (net.k * e + net.k3 * e ** 3)) - target[d]
            tangent = net.Dt @ sp.diags(net.k + 3.0 * net.k3 * e ** 2) @ net.D
            step = spsolve(tangent.tocsc(), residual)
            if not np.all(np.isfinite(step)):
                raise NumericalError("Static equilibrium solve failed: singular tangent stiffness")
            xd = xd + step
            if np.linalg.norm(step) <= tol * (1.0 + np.linalg.norm(xd)):
                break
        else:
            raise NumericalError(f"Static equilibrium did not converge in {max_iter} iterations")
        x[:, d] = xd
    return x.ravel()
