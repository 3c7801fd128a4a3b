"""Pipelines: offline training, online rollout, evaluation and benchmarking."""
from reducedsim.engine.benchmark import run_benchmark
from reducedsim.engine.evaluate import run_evaluate
from reducedsim.engine.offline import run_offline
from reducedsim.engine.online import run_online
from reducedsim.engine.orchestrator import Orchestrator

__all__ = ["run_benchmark", "run_evaluate", "run_offline", "run_online", "Orchestrator"]
