"""
Benchmark pipeline: real-time ratios of the full-order model and the surrogate on the same
grid for a sweep of state dimensions.

A persisted bundle is used where its dimensions fit; otherwise the surrogate is an
untrained network of the configured architecture with a seeded orthonormal basis, which
costs the same per step as a trained one.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from reducedsim.config import ExperimentConfig
from reducedsim.core.results import BenchmarkResult, BenchmarkRow
from reducedsim.core.types import HifiModelConfig
from reducedsim.engine.artifacts import BENCHMARK_FILE, initial_state
from reducedsim.engine.orchestrator import Orchestrator
from reducedsim.errors import ConfigError
from reducedsim.hifi.excitation import generate_parameter_set
from reducedsim.hifi.model import build_network, integrate
from reducedsim.lstm.network import init_model
from reducedsim.metrics.report import to_csv
from reducedsim.presentations.report import BenchmarkPresentation
from reducedsim.reduction.pod import ReducedBasis
from reducedsim.rollout.bundle import SurrogateBundle
from reducedsim.rollout.online import measure_realtime_ratio, time_realtime_ratio
from reducedsim.serving.store import ArtifactStore

logger = logging.getLogger(__name__)


def random_basis(n_state: int, r: int, seed: int) -> ReducedBasis:
    """Seeded orthonormal N x r basis from a QR factorization"""
    if r > n_state:
        raise ConfigError(f"Benchmark r={r} exceeds N={n_state}")
    Q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((n_state, r)))
    return ReducedBasis(V=Q, singular_values=np.ones(r))


def _surrogate(config: ExperimentConfig, n_state: int, bundle: Optional[SurrogateBundle]) -> Tuple[SurrogateBundle, str]:
    l = config.excitation.n_channels
    if bundle is not None and bundle.n_state == n_state:
        return bundle, "bundle"
    r = bundle.r if bundle is not None else config.benchmark.r
    basis = random_basis(n_state, r, config.benchmark.seed)
    if bundle is not None and bundle.l == l:
        return SurrogateBundle(basis=basis, model=bundle.model), "bundle model, random basis"
    layers = list(config.network.layers)
    if not config.network.dense_head:
        layers[-1] = r
    model = init_model(r, l, config.dataset.n_w, layers, config.network.dense_head, seed=config.benchmark.seed)
    return SurrogateBundle(basis=basis, model=model), "untrained model, random basis"


def _hifi_for(config: ExperimentConfig, n_state: int) -> HifiModelConfig:
    dims = config.hifi.dims_per_node
    if n_state % dims != 0:
        raise ConfigError(f"Benchmark size N={n_state} is not a multiple of dims_per_node={dims}")
    return config.hifi.model_copy(update={"n_node": n_state // dims})


def run_benchmark(
    config: ExperimentConfig,
    store: ArtifactStore,
    bundle: Optional[SurrogateBundle] = None,
    repetitions: Optional[int] = None,
) -> BenchmarkResult:
    repetitions = repetitions or config.benchmark.repetitions
    orchestrator = Orchestrator(store=store, pipeline="benchmark")
    longest = config.grid.duration[1]
    grid = config.grid.model_copy(update={"duration": (longest, longest)})
    mu = generate_parameter_set(1, config.benchmark.seed, config.excitation, grid)[0]

    rows = []
    for n_state in config.benchmark.sizes:
        def measure():
            hifi = _hifi_for(config, n_state)
            z1 = initial_state(config, hifi)
            network = build_network(hifi)
            full = time_realtime_ratio(
                lambda: integrate(hifi, mu, z1, mu.grid, network), mu.grid.duration, repetitions
            )
            surrogate, source = _surrogate(config, n_state, bundle)
            reduced = measure_realtime_ratio(surrogate, z1, mu, repetitions)
            return BenchmarkRow(
                n_state=n_state,
                hifi_min=full.min,
                hifi_median=full.median,
                surrogate_min=reduced.min,
                surrogate_median=reduced.median,
                surrogate_source=source,
            )

        row = orchestrator.run_stage(f"n{n_state}", measure)
        logger.info(
            f"[BENCHMARK] N={n_state} full={row.hifi_median:.4g} surrogate={row.surrogate_median:.4g} "
            f"speedup={row.speedup:.1f}x"
        )
        rows.append(row)

    result = BenchmarkResult(rows=rows, repetitions=repetitions, eta=mu.grid.eta)
    store.put_text(BENCHMARK_FILE, to_csv(result.frame()))
    store.put_text("benchmark.txt", BenchmarkPresentation(result).render_text())
    return result
