"""Error quantities: relative scores, node distances and report tables."""
from reducedsim.metrics.distance import NodeDistances, devectorize, node_distance, vectorize
from reducedsim.metrics.report import SimulationReport, node_distance_frame, steps_frame, summary_frame
from reducedsim.metrics.scores import ScoreSeries, ScoreTriplet, mean_score, relative_score, score_triplet

__all__ = [
    "NodeDistances",
    "devectorize",
    "node_distance",
    "vectorize",
    "SimulationReport",
    "node_distance_frame",
    "steps_frame",
    "summary_frame",
    "ScoreSeries",
    "ScoreTriplet",
    "mean_score",
    "relative_score",
    "score_triplet",
]
