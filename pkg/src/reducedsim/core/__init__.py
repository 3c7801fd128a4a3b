"""reducedsim core components."""

from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory, TimeGrid
from reducedsim.core.types import (
    BenchmarkConfig,
    DatasetConfig,
    ExcitationSpec,
    GridConfig,
    HifiModelConfig,
    NetworkConfig,
    ReductionConfig,
    SeedConfig,
    SplitSpec,
    TrainConfig,
)
