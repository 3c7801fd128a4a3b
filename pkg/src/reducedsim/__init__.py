"""reducedsim: reduced-basis LSTM surrogates for parametrized dynamical systems."""

from reducedsim.config import ExperimentConfig, load_config, load_default_config
from reducedsim.engine import run_benchmark, run_evaluate, run_offline, run_online
from reducedsim.errors import ReducedSimError
from reducedsim.rollout import SurrogateBundle, rollout_full, rollout_reduced

__version__ = "0.1.0"

__all__ = [
    "ExperimentConfig", "load_config", "load_default_config",
    "run_benchmark", "run_evaluate", "run_offline", "run_online",
    "ReducedSimError",
    "SurrogateBundle", "rollout_full", "rollout_reduced",
]
