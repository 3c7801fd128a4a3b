"""
Online pipeline: load a persisted bundle, roll it out for one parameter trajectory and
write the predicted trajectory plus a per-step table.

With a simulation id, or a trajectory file written in the trajectory format, the parameter
trajectory and initial state it holds are used and the rollout is scored against its
states. Without either the surrogate is driven by the bias-only excitation (no dynamic
load) from the configured initial state.
"""
import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from reducedsim.config import ExperimentConfig
from reducedsim.core.results import OnlineResult
from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory, TimeGrid
from reducedsim.engine.artifacts import (
    bias_vector,
    initial_state,
    load_simulation,
    load_trajectory_file,
    prediction_name,
    steps_name,
)
from reducedsim.engine.orchestrator import Orchestrator
from reducedsim.errors import ConfigError
from reducedsim.external.codec import encode_trajectory
from reducedsim.metrics.report import steps_frame, to_csv
from reducedsim.metrics.scores import first_second, mean_score, score_triplet
from reducedsim.reduction.pod import reconstruct, reduce
from reducedsim.rollout.bundle import SurrogateBundle, load_bundle
from reducedsim.rollout.online import rollout_reduced
from reducedsim.serving.store import ArtifactStore

logger = logging.getLogger(__name__)


def constant_excitation(config: ExperimentConfig) -> ParameterTrajectory:
    """Bias-only parameter trajectory over the longest configured duration"""
    eta = int(round(config.grid.duration[1] / config.grid.dt)) + 1
    grid = TimeGrid(t_start=config.grid.t_start, dt=config.grid.dt, eta=eta)
    return ParameterTrajectory(grid, np.tile(bias_vector(config), (eta, 1)))


def _unscored_steps(grid: TimeGrid, predicted: np.ndarray) -> pd.DataFrame:
    columns = {"t": grid.points}
    for k in range(predicted.shape[1]):
        columns[f"zbar_pred_{k}"] = predicted[:, k]
    return pd.DataFrame(columns)


def run_online(
    bundle_store: ArtifactStore,
    config: ExperimentConfig,
    sim_id: Optional[int] = None,
    out_store: Optional[ArtifactStore] = None,
    trajectory: Optional[Union[str, Path]] = None,
) -> OnlineResult:
    if sim_id is not None and trajectory is not None:
        raise ConfigError("Give either a simulation id or a trajectory file, not both")
    out_store = out_store or bundle_store
    orchestrator = Orchestrator(store=out_store, pipeline="online")
    bundle: SurrogateBundle = orchestrator.run_stage("load", load_bundle, bundle_store)

    if sim_id is not None:
        reference, mu = orchestrator.run_stage("reference", load_simulation, bundle_store, sim_id)
        z1 = reference.states[0]
        label = f"{sim_id:04d}"
    elif trajectory is not None:
        reference, mu = orchestrator.run_stage("reference", load_trajectory_file, trajectory)
        z1 = reference.states[0]
        label = Path(trajectory).stem
    else:
        reference = None
        mu = constant_excitation(config)
        z1 = initial_state(config)
        label = "constant"

    predicted = orchestrator.run_stage("rollout", rollout_reduced, bundle, z1, mu)
    prediction = StateTrajectory(grid=mu.grid, states=reconstruct(bundle.basis, predicted))
    out_store.put_bytes(prediction_name(label), encode_trajectory(prediction, mu))

    scores = {}
    if reference is not None:
        triplet = score_triplet(reference, bundle, mu, predicted=predicted)
        steps = steps_frame(mu.grid, reduce(bundle.basis, reference.states), triplet)
        scores = {
            "s_rec": mean_score(triplet.rec),
            "s_regr": mean_score(triplet.regr),
            "s_approx": mean_score(triplet.approx),
            "s_approx_1s": mean_score(triplet.approx, first_second(mu.grid)),
        }
        logger.info(
            f"[ROLLOUT] {label}: " + " ".join(f"{k}={v:.4f}" for k, v in scores.items())
        )
    else:
        steps = _unscored_steps(mu.grid, predicted)
    out_store.put_text(steps_name(label), to_csv(steps))
    logger.info(f"[ROLLOUT] {mu.grid.eta} steps written as {prediction_name(label)}")
    return OnlineResult(prediction=prediction, steps=steps, sim_id=sim_id, scores=scores)
