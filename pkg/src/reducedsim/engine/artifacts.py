"""Artifact names and loaders shared by the pipelines."""
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from reducedsim.config import ExperimentConfig
from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory
from reducedsim.core.types import HifiModelConfig
from reducedsim.errors import ConfigError
from reducedsim.external.codec import DatasetManifest, decode_dataset_manifest, decode_trajectory
from reducedsim.hifi.model import static_equilibrium
from reducedsim.serving.store import ArtifactStore

DATASET_FILE = "dataset.bin"
HISTORY_FILE = "history.csv"
SUMMARY_FILE = "summary.csv"
REPORT_FILE = "report.txt"
BENCHMARK_FILE = "benchmark.csv"


def trajectory_name(sim_id: int) -> str:
    return f"trajectories/sim_{sim_id:04d}.bin"


def prediction_name(label: str) -> str:
    return f"predictions/pred_{label}.bin"


def steps_name(label: str) -> str:
    return f"steps_{label}.csv"


def node_distance_name(label: str) -> str:
    return f"node_distance_{label}.csv"


def load_simulation(store: ArtifactStore, sim_id: int) -> Tuple[StateTrajectory, ParameterTrajectory]:
    return decode_trajectory(store.get_bytes(trajectory_name(sim_id)))


def load_trajectory_file(path: Union[str, Path]) -> Tuple[StateTrajectory, ParameterTrajectory]:
    """Read a trajectory-format file from outside the bundle"""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Trajectory file not found: {path}")
    return decode_trajectory(path.read_bytes())


def load_dataset_manifest(store: ArtifactStore) -> DatasetManifest:
    return decode_dataset_manifest(store.get_bytes(DATASET_FILE))


def bias_vector(config: ExperimentConfig) -> np.ndarray:
    spec = config.excitation
    return np.asarray(spec.bias if spec.bias else [0.0] * spec.n_channels, dtype=np.float64)


def initial_state(config: ExperimentConfig, hifi: Optional[HifiModelConfig] = None) -> np.ndarray:
    """
    Shared initial displacement z1. Every generated excitation starts at its bias, so
    the equilibrium under the bias is the rest state at t_1.
    """
    hifi = hifi or config.hifi
    if config.initial_state == "zero":
        return np.zeros(hifi.n_state)
    return static_equilibrium(hifi, bias_vector(config))
