"""Online phase: surrogate bundles and autoregressive rollout."""
from reducedsim.rollout.bundle import (
    LstmPredictor,
    Predictor,
    RecordingPredictor,
    ReplayPredictor,
    SurrogateBundle,
    ZeroPredictor,
    load_bundle,
    save_bundle,
)
from reducedsim.rollout.online import (
    RealtimeStats,
    measure_realtime_ratio,
    one_step_predictions,
    rollout_full,
    rollout_reduced,
    time_realtime_ratio,
)

__all__ = [
    "LstmPredictor",
    "Predictor",
    "RecordingPredictor",
    "ReplayPredictor",
    "SurrogateBundle",
    "ZeroPredictor",
    "load_bundle",
    "save_bundle",
    "RealtimeStats",
    "measure_realtime_ratio",
    "one_step_predictions",
    "rollout_full",
    "rollout_reduced",
    "time_realtime_ratio",
]
