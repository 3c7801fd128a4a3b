"""Report presentations - evaluation summary and benchmark tables."""
import pandas as pd

from reducedsim.core.results import BenchmarkResult
from reducedsim.metrics.report import summary_rows
from reducedsim.presentations.base import Presentation


class SummaryPresentation(Presentation):
    """Error quantities of the test simulations: one row per quantity, one column per simulation"""

    def __init__(self, summary: pd.DataFrame):
        self.summary = summary

    def render_text(self) -> str:
        headers = ["quantity"] + [
            "mean" if sid == "mean" else f"sim {sid}" for sid in self.summary["sim_id"]
        ]
        lines = [
            f"Error quantities of {len(self.summary) - 1} test simulations",
            "",
            self.table(headers, summary_rows(self.summary)),
        ]
        flagged = int(self.summary["flagged_steps"].iloc[-1])
        if flagged:
            lines += ["", f"{flagged} steps with a zero reference norm were left out of the means"]
        return "\n".join(lines) + "\n"


class BenchmarkPresentation(Presentation):

    def __init__(self, result: BenchmarkResult):
        self.result = result

    def render_text(self) -> str:
        headers = ["N", "full model (median)", "surrogate (median)", "speedup", "surrogate"]
        rows = [
            [
                str(row.n_state),
                f"{row.hifi_median:.4g}",
                f"{row.surrogate_median:.4g}",
                f"{row.speedup:.1f}x",
                row.surrogate_source,
            ]
            for row in self.result.rows
        ]
        lines = [
            f"Real-time ratios over {self.result.eta} steps, {self.result.repetitions} repetitions",
            "",
            self.table(headers, rows),
        ]
        return "\n".join(lines) + "\n"
