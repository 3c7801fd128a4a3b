"""
Validated descriptors shared across the toolkit.

All descriptors are frozen pydantic models. Validation failures surface as ConfigError
so callers see one error family regardless of which layer built the descriptor.
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from reducedsim.errors import ConfigError


class Descriptor(BaseModel):
    """Base for immutable, strictly validated descriptors"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    def __init__(self, **data):
        try:
            super().__init__(**data)
        except ValidationError as exc:
            raise ConfigError(f"Invalid {type(self).__name__}: {exc}") from exc


class HifiModelConfig(Descriptor):
    """Driven, damped, cubically nonlinear spring network standing in for the full model"""
    n_node: int = Field(default=100, ge=1, description="Number of nodes")
    dims_per_node: int = Field(default=3, ge=1, description="Displacement components per node")
    mass: float = Field(default=1.0, gt=0, description="Nodal mass (kg)")
    stiffness: float = Field(default=400.0, ge=0, description="Coupling spring stiffness (N/m)")
    damping: float = Field(default=2.0, ge=0, description="Coupling damper (N s/m)")
    nonlinearity_coeff: float = Field(default=0.0, description="Cubic spring coefficient (N/m^3)")
    ground_stiffness: float = Field(default=0.0, ge=0, description="Node-to-support spring (N/m)")
    ground_damping: float = Field(default=0.0, ge=0, description="Node-to-support damper (N s/m)")
    topology: Literal["chain", "grid"] = Field(default="chain", description="Coupling topology")
    grid_width: Optional[int] = Field(default=None, ge=1, description="Row length for grid topology")
    substeps: int = Field(default=10, ge=1, description="RK4 substeps per output interval")

    @property
    def n_state(self) -> int:
        """State dimension N = n_node * dims_per_node"""
        return self.n_node * self.dims_per_node

    @model_validator(mode="after")
    def _check_topology(self):
        if self.topology == "grid" and self.grid_width is None:
            raise ValueError("grid topology requires grid_width")
        return self


class GridConfig(Descriptor):
    """Sampling grid shared by all simulations"""
    t_start: float = Field(default=0.0)
    dt: float = Field(default=0.025, gt=0, description="Output sampling interval (s)")
    duration: Tuple[float, float] = Field(
        default=(2.0, 4.0),
        description="Simulated time range [min, max] (s); each trajectory draws its own length",
    )

    @model_validator(mode="after")
    def _check_duration(self):
        lo, hi = self.duration
        if lo < self.dt or hi < lo:
            raise ValueError(f"duration must satisfy dt <= min <= max, got {self.duration}")
        return self


class ExcitationSpec(Descriptor):
    """Seeded smooth excitation: low-frequency sinusoids plus ramp-and-hold pulses"""
    n_channels: int = Field(default=3, ge=1, description="Acceleration channels l")
    amplitude: float = Field(default=5.0, ge=0, description="Bound on |mu - bias| per channel (m/s^2)")
    freq_min: float = Field(default=0.2, gt=0, description="Lowest sinusoid frequency (Hz)")
    freq_max: float = Field(default=2.0, gt=0, description="Highest sinusoid frequency (Hz)")
    n_sines: int = Field(default=3, ge=0, description="Sinusoids per channel")
    pulse_probability: float = Field(default=0.5, ge=0, le=1, description="Chance of a pulse per channel")
    pulse_ramp: Tuple[float, float] = Field(default=(0.05, 0.3), description="Ramp time range (s)")
    pulse_hold: Tuple[float, float] = Field(default=(0.1, 1.0), description="Hold time range (s)")
    bias: List[float] = Field(default_factory=list, description="Constant per-channel offset, e.g. gravity")

    @model_validator(mode="after")
    def _check_bounds(self):
        if self.freq_max < self.freq_min:
            raise ValueError(f"freq_max {self.freq_max} < freq_min {self.freq_min}")
        for name in ("pulse_ramp", "pulse_hold"):
            lo, hi = getattr(self, name)
            if lo <= 0 or hi < lo:
                raise ValueError(f"{name} must satisfy 0 < min <= max, got {(lo, hi)}")
        if self.bias and len(self.bias) != self.n_channels:
            raise ValueError(f"bias has {len(self.bias)} entries, expected {self.n_channels}")
        return self


class SplitSpec(Descriptor):
    """Whole-simulation train/validation/test split"""
    seed: int = Field(default=0)
    train: int = Field(default=90, ge=1)
    validation: int = Field(default=11, ge=1)
    test: int = Field(default=6, ge=0)

    @property
    def total(self) -> int:
        return self.train + self.validation + self.test


class ReductionConfig(Descriptor):
    r: int = Field(default=30, ge=1, description="Retained POD modes")
    center: bool = Field(default=False, description="Subtract the snapshot mean before the SVD")
    gram_ratio: float = Field(default=4.0, ge=1, description="Use the method of snapshots when one side is this much smaller")


class DatasetConfig(Descriptor):
    n_w: int = Field(default=8, ge=1, description="Window length")


class NetworkConfig(Descriptor):
    layers: List[int] = Field(default_factory=lambda: [256, 256, 256, 30], min_length=1)
    dense_head: bool = Field(default=False, description="Closing affine map to R^r")

    @model_validator(mode="after")
    def _check_layers(self):
        if any(n < 1 for n in self.layers):
            raise ValueError(f"layer sizes must be >= 1, got {self.layers}")
        return self


class TrainConfig(Descriptor):
    epochs: int = Field(default=150, ge=1)
    batch_size: int = Field(default=5, ge=1)
    learning_rate: float = Field(default=1e-3, gt=0)
    seed: int = Field(default=0, description="Weight initialization seed")
    shuffle_seed: int = Field(default=0, description="Mini-batch shuffling seed")
    clip_norm: Optional[float] = Field(default=None, gt=0, description="Global gradient norm clip")
    rho: float = Field(default=0.9, gt=0, lt=1, description="RMSprop decay")
    epsilon: float = Field(default=1e-7, gt=0, description="RMSprop epsilon")


class SeedConfig(Descriptor):
    data: int = 0
    split: int = 0
    init: int = 0
    shuffle: int = 0


class BenchmarkConfig(Descriptor):
    sizes: List[int] = Field(default_factory=lambda: [300, 3000, 30000])
    repetitions: int = Field(default=5, ge=1)
    r: int = Field(default=30, ge=1)
    seed: int = Field(default=0)
