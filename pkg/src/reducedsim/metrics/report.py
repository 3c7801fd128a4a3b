"""Per-simulation error summaries and the CSV tables built from them."""
import math
from dataclasses import asdict, dataclass
from typing import List, Sequence

import numpy as np
import pandas as pd

from reducedsim.core.trajectory import TimeGrid
from reducedsim.errors import ConfigError, DimensionError
from reducedsim.metrics.distance import NodeDistances
from reducedsim.metrics.scores import ScoreTriplet

# CSV column names for the summary table, in display order
SUMMARY_COLUMNS = ["s_regr", "s_approx", "s_approx_1s", "s_rec", "e_dist_max", "realtime_ratio"]
SUMMARY_LABELS = {
    "s_regr": "mean regression score",
    "s_approx": "mean approximation score",
    "s_approx_1s": "mean approximation score, first second",
    "s_rec": "mean reconstruction score",
    "e_dist_max": "max node distance (m)",
    "realtime_ratio": "real-time ratio",
}


@dataclass(frozen=True)
class SimulationReport:
    sim_id: int
    s_regr: float
    s_approx: float
    s_approx_1s: float
    s_rec: float
    e_dist_max: float
    realtime_ratio: float
    flagged_steps: int = 0

    def __post_init__(self):
        for name in SUMMARY_COLUMNS:
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"Simulation {self.sim_id}: {name} is not finite")
        if self.e_dist_max < 0:
            raise ConfigError(f"Simulation {self.sim_id}: negative e_dist_max {self.e_dist_max}")


def summary_frame(reports: Sequence[SimulationReport]) -> pd.DataFrame:
    """One row per simulation plus a final 'mean' row"""
    if not reports:
        raise ConfigError("No simulation reports to summarize")
    frame = pd.DataFrame([asdict(r) for r in reports])
    frame["sim_id"] = frame["sim_id"].astype(str)
    mean = {"sim_id": "mean", "flagged_steps": int(frame["flagged_steps"].sum())}
    mean.update({name: float(frame[name].mean()) for name in SUMMARY_COLUMNS})
    frame = pd.concat([frame, pd.DataFrame([mean])], ignore_index=True)
    return frame[["sim_id"] + SUMMARY_COLUMNS + ["flagged_steps"]]


def steps_frame(grid: TimeGrid, true_reduced: np.ndarray, triplet: ScoreTriplet) -> pd.DataFrame:
    """Per-step table: t, true and predicted coefficients, and the three scores"""
    predicted = triplet.predicted
    if true_reduced.shape != predicted.shape or true_reduced.shape[0] != grid.eta:
        raise DimensionError(
            f"Coefficient arrays {true_reduced.shape}/{predicted.shape} do not match eta={grid.eta}"
        )
    columns = {"t": grid.points}
    for k in range(true_reduced.shape[1]):
        columns[f"zbar_true_{k}"] = true_reduced[:, k]
    for k in range(predicted.shape[1]):
        columns[f"zbar_pred_{k}"] = predicted[:, k]
    columns["s_rec"] = triplet.rec.values
    columns["s_regr"] = triplet.regr.values
    columns["s_approx"] = triplet.approx.values
    return pd.DataFrame(columns)


def node_distance_frame(grid: TimeGrid, distances: NodeDistances) -> pd.DataFrame:
    """One row per time step, one column per node"""
    d = distances.distances
    if d.shape[0] != grid.eta:
        raise DimensionError(f"Distances have {d.shape[0]} steps, grid has eta={grid.eta}")
    frame = pd.DataFrame(d, columns=[f"node_{m}" for m in range(d.shape[1])])
    frame.insert(0, "t", grid.points)
    return frame


def history_frame(history) -> pd.DataFrame:
    return pd.DataFrame(
        [{"epoch": h.epoch, "train_loss": h.train_loss, "val_loss": h.val_loss} for h in history]
    )


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.17g")


def summary_rows(frame: pd.DataFrame) -> List[List[str]]:
    """Transposed view: one row per quantity, one column per simulation plus the mean"""
    rows = []
    for name in SUMMARY_COLUMNS:
        rows.append([SUMMARY_LABELS[name]] + [f"{v:.4g}" for v in frame[name]])
    return rows
