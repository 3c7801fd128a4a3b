"""
Offline pipeline: parameter set -> full-order simulations -> POD -> windowed dataset ->
trained LSTM, everything persisted through one artifact store.
"""
import logging
from typing import List, Optional, Sequence

from reducedsim.config import ExperimentConfig
from reducedsim.core.results import OfflineResult
from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory
from reducedsim.dataset.normalization import fit_normalization
from reducedsim.dataset.split import split_simulations
from reducedsim.dataset.windows import build_windows
from reducedsim.engine.artifacts import DATASET_FILE, HISTORY_FILE, initial_state, trajectory_name
from reducedsim.engine.orchestrator import Orchestrator
from reducedsim.external.codec import DatasetManifest, encode_dataset_manifest, encode_trajectory
from reducedsim.hifi.excitation import generate_parameter_set
from reducedsim.hifi.model import simulate_many
from reducedsim.lstm.training import train
from reducedsim.metrics.report import history_frame, to_csv
from reducedsim.reduction.pod import assemble_snapshots, compute_pod, projection_error, reduce
from reducedsim.rollout.bundle import BASIS_FILE, MODEL_FILE, SurrogateBundle, save_bundle
from reducedsim.serving.store import ArtifactStore, DirectoryArtifactStore

logger = logging.getLogger(__name__)


def generate(config: ExperimentConfig) -> List[ParameterTrajectory]:
    return generate_parameter_set(config.kappa, config.seeds.data, config.excitation, config.grid)


def simulate_all(config: ExperimentConfig, params: Sequence[ParameterTrajectory],
                 store: ArtifactStore) -> List[StateTrajectory]:
    """Simulate the whole parameter set and persist one trajectory file per simulation"""
    z1 = initial_state(config)
    trajectories = simulate_many(config.hifi, params, z1, workers=config.workers)
    for sim_id, (traj, mu) in enumerate(zip(trajectories, params)):
        store.put_bytes(trajectory_name(sim_id), encode_trajectory(traj, mu))
    logger.info(f"[SIMULATE] {len(trajectories)} simulations, N={config.hifi.n_state}, workers={config.workers}")
    return trajectories


def _windows(config, basis, trajectories, params, ids):
    return build_windows(
        [reduce(basis, trajectories[i].states) for i in ids],
        [params[i] for i in ids],
        config.dataset.n_w,
        sim_ids=ids,
    )


def run_offline(config: ExperimentConfig, store: Optional[ArtifactStore] = None) -> OfflineResult:
    """Run the full offline pipeline; re-running with the same config reproduces every artifact"""
    store = store or DirectoryArtifactStore(config.output_dir)
    orchestrator = Orchestrator(store=store, pipeline="offline")

    params = orchestrator.run_stage("generate", generate, config)
    trajectories = orchestrator.run_stage("simulate", simulate_all, config, params, store)
    train_ids, val_ids, test_ids = orchestrator.run_stage(
        "split", split_simulations, len(trajectories), config.split_spec()
    )

    def pod_stage():
        snapshots = assemble_snapshots([trajectories[i] for i in train_ids], train_ids)
        basis = compute_pod(snapshots, config.reduction.r, config.reduction.center, config.reduction.gram_ratio)
        logger.info(f"[POD] training projection error {projection_error(snapshots, basis):.6e}")
        return basis

    basis = orchestrator.run_stage("pod", pod_stage)

    def dataset_stage():
        train_set = _windows(config, basis, trajectories, params, train_ids)
        val_set = _windows(config, basis, trajectories, params, val_ids)
        normalization = fit_normalization(train_set)
        store.put_bytes(DATASET_FILE, encode_dataset_manifest(DatasetManifest(
            n_w=config.dataset.n_w,
            train_ids=train_ids,
            val_ids=val_ids,
            test_ids=test_ids,
            normalization=normalization,
        )))
        logger.info(f"[DATASET] train_samples={len(train_set)} val_samples={len(val_set)} n_w={config.dataset.n_w}")
        return train_set.with_normalization(normalization), val_set.with_normalization(normalization)

    train_set, val_set = orchestrator.run_stage("dataset", dataset_stage)

    def train_stage():
        result = train(train_set, val_set, config.network, config.train_config())
        bundle = SurrogateBundle(basis=basis, model=result.model)
        save_bundle(bundle, store)
        store.put_text(HISTORY_FILE, to_csv(history_frame(result.history)))
        return bundle, result

    bundle, training = orchestrator.run_stage("train", train_stage)

    split = {"train": train_ids, "validation": val_ids, "test": test_ids}
    manifest = store.write_manifest({
        "split": split,
        "files": {"basis": BASIS_FILE, "model": MODEL_FILE, "dataset": DATASET_FILE, "history": HISTORY_FILE},
        "n_state": basis.n_state,
        "r": basis.r,
        "n_w": config.dataset.n_w,
        "best_epoch": training.best_epoch,
        "config": config.model_dump(mode="json", exclude={"output_dir", "workers"}),
    })
    return OfflineResult(bundle=bundle, training=training, split=split, manifest=manifest, output_dir=store.location)
