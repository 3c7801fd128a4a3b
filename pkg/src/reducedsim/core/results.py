"""Result types for pipeline runs."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from reducedsim.core.trajectory import StateTrajectory


@dataclass
class OfflineResult:
    """Persisted surrogate, training history and the run manifest"""
    bundle: Any
    training: Any
    split: Dict[str, List[int]]
    manifest: Dict[str, Any]
    output_dir: str


@dataclass
class OnlineResult:
    """Predicted trajectory and its per-step table"""
    prediction: StateTrajectory
    steps: pd.DataFrame
    sim_id: Optional[int] = None
    scores: Dict[str, float] = field(default_factory=dict)


@dataclass
class EvaluationResult:
    """Per-simulation reports and the summary table (one row per test simulation plus the mean)"""
    reports: List[Any]
    summary: pd.DataFrame


@dataclass
class BenchmarkRow:
    n_state: int
    hifi_min: float
    hifi_median: float
    surrogate_min: float
    surrogate_median: float
    surrogate_source: str

    @property
    def speedup(self) -> float:
        return self.hifi_median / self.surrogate_median


@dataclass
class BenchmarkResult:
    rows: List[BenchmarkRow]
    repetitions: int
    eta: int

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {
                "n_state": row.n_state,
                "hifi_ratio_min": row.hifi_min,
                "hifi_ratio_median": row.hifi_median,
                "surrogate_ratio_min": row.surrogate_min,
                "surrogate_ratio_median": row.surrogate_median,
                "speedup": row.speedup,
                "surrogate_source": row.surrogate_source,
            }
            for row in self.rows
        ])
