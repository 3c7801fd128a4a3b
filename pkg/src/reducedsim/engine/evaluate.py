"""
Evaluation pipeline: roll out the bundle on every test simulation and report scores,
node distances and the real-time ratio per simulation.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from reducedsim.config import ExperimentConfig
from reducedsim.core.results import EvaluationResult
from reducedsim.engine.artifacts import (
    REPORT_FILE,
    SUMMARY_FILE,
    load_dataset_manifest,
    load_simulation,
    node_distance_name,
    steps_name,
)
from reducedsim.engine.orchestrator import Orchestrator
from reducedsim.errors import ConfigError
from reducedsim.metrics.distance import node_distance
from reducedsim.metrics.report import (
    SimulationReport,
    node_distance_frame,
    steps_frame,
    summary_frame,
    to_csv,
)
from reducedsim.metrics.scores import first_second, mean_score, score_triplet
from reducedsim.presentations.report import SummaryPresentation
from reducedsim.reduction.pod import reconstruct, reduce
from reducedsim.rollout.bundle import SurrogateBundle, load_bundle
from reducedsim.rollout.online import measure_realtime_ratio, rollout_reduced
from reducedsim.serving.store import ArtifactStore

logger = logging.getLogger(__name__)


def _rollout_one(args) -> np.ndarray:
    bundle, z1, mu = args
    return rollout_reduced(bundle, z1, mu)


def _rollouts(bundle: SurrogateBundle, cases, workers: int) -> List[np.ndarray]:
    jobs = [(bundle, reference.states[0], mu) for reference, mu in cases]
    if workers <= 1 or len(jobs) <= 1:
        return [_rollout_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_rollout_one, jobs))


def run_evaluate(
    bundle_store: ArtifactStore,
    config: ExperimentConfig,
    out_store: Optional[ArtifactStore] = None,
    sim_ids: Optional[Sequence[int]] = None,
    repetitions: int = 1,
    bundle: Optional[SurrogateBundle] = None,
) -> EvaluationResult:
    """
    Score the bundle on the test split (or `sim_ids`). A `bundle` passed in replaces the
    persisted one, which lets stub predictors be evaluated against stored references.
    """
    out_store = out_store or bundle_store
    orchestrator = Orchestrator(store=out_store, pipeline="evaluate")
    if bundle is None:
        bundle = orchestrator.run_stage("load", load_bundle, bundle_store)
    if sim_ids is None:
        sim_ids = orchestrator.run_stage("split", lambda: load_dataset_manifest(bundle_store).test_ids)
    sim_ids = list(sim_ids)
    if not sim_ids:
        raise ConfigError("No test simulations to evaluate")

    cases = orchestrator.run_stage("references", lambda: [load_simulation(bundle_store, i) for i in sim_ids])
    predictions = orchestrator.run_stage("rollout", _rollouts, bundle, cases, config.workers)

    def score_stage():
        reports = []
        for sim_id, (reference, mu), predicted in zip(sim_ids, cases, predictions):
            label = f"{sim_id:04d}"
            triplet = score_triplet(reference, bundle, mu, predicted=predicted)
            out_store.put_text(
                steps_name(label),
                to_csv(steps_frame(mu.grid, reduce(bundle.basis, reference.states), triplet)),
            )
            distances = node_distance(reference.states, reconstruct(bundle.basis, predicted),
                                      config.hifi.dims_per_node)
            out_store.put_text(node_distance_name(label), to_csv(node_distance_frame(mu.grid, distances)))
            realtime = measure_realtime_ratio(bundle, reference.states[0], mu, repetitions)
            report = SimulationReport(
                sim_id=sim_id,
                s_regr=mean_score(triplet.regr),
                s_approx=mean_score(triplet.approx),
                s_approx_1s=mean_score(triplet.approx, first_second(mu.grid)),
                s_rec=mean_score(triplet.rec),
                e_dist_max=distances.max,
                realtime_ratio=realtime.median,
                flagged_steps=triplet.rec.n_flagged + triplet.regr.n_flagged + triplet.approx.n_flagged,
            )
            logger.info(
                f"[EVALUATE] simulation {sim_id}: s_regr={report.s_regr:.4f} s_approx={report.s_approx:.4f} "
                f"s_rec={report.s_rec:.4f} e_dist_max={report.e_dist_max:.4g}"
            )
            reports.append(report)
        return reports

    reports = orchestrator.run_stage("score", score_stage)
    summary = summary_frame(reports)
    out_store.put_text(SUMMARY_FILE, to_csv(summary))
    out_store.put_text(REPORT_FILE, SummaryPresentation(summary).render_text())
    return EvaluationResult(reports=reports, summary=summary)
