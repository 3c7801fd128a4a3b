"""Centralized configuration for reducedsim"""
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

import yaml
from pydantic import Field, model_validator

from reducedsim.core.types import (
    BenchmarkConfig,
    DatasetConfig,
    Descriptor,
    ExcitationSpec,
    GridConfig,
    HifiModelConfig,
    NetworkConfig,
    ReductionConfig,
    SeedConfig,
    SplitSpec,
    TrainConfig,
)
from reducedsim.errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).parent / "configs" / "default.yaml"


class ExperimentConfig(Descriptor):
    """Everything one offline/online/evaluate/benchmark run needs; seeds are explicit"""
    hifi: HifiModelConfig = Field(default_factory=HifiModelConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    excitation: ExcitationSpec = Field(default_factory=ExcitationSpec)
    split: SplitSpec = Field(default_factory=SplitSpec)
    reduction: ReductionConfig = Field(default_factory=ReductionConfig)
    dataset: DatasetConfig = Field(default_factory=DatasetConfig)
    network: NetworkConfig = Field(default_factory=NetworkConfig)
    training: TrainConfig = Field(default_factory=TrainConfig)
    seeds: SeedConfig = Field(default_factory=SeedConfig)
    benchmark: BenchmarkConfig = Field(default_factory=BenchmarkConfig)
    initial_state: Literal["equilibrium", "zero"] = Field(
        default="equilibrium",
        description="Shared initial displacement: static equilibrium under mu(t_1)'s bias, or zero",
    )
    output_dir: str = Field(default="runs/default")
    workers: int = Field(default=1, ge=1, description="Processes for batch simulation and test rollouts")

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.excitation.n_channels != self.hifi.dims_per_node:
            raise ValueError(
                f"excitation.n_channels={self.excitation.n_channels} must equal "
                f"hifi.dims_per_node={self.hifi.dims_per_node} (one acceleration per direction)"
            )
        if not self.network.dense_head and self.network.layers[-1] != self.reduction.r:
            raise ValueError(
                f"Without a dense head the last layer must have r={self.reduction.r} units, "
                f"got {self.network.layers[-1]}"
            )
        return self

    @property
    def kappa(self) -> int:
        """Number of simulations in the parameter set"""
        return self.split.total

    def split_spec(self) -> SplitSpec:
        return self.split.model_copy(update={"seed": self.seeds.split})

    def train_config(self) -> TrainConfig:
        return self.training.model_copy(update={"seed": self.seeds.init, "shuffle_seed": self.seeds.shuffle})

    def with_output_dir(self, output_dir: Optional[str]) -> "ExperimentConfig":
        if not output_dir:
            return self
        return self.model_copy(update={"output_dir": str(output_dir)})


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"Invalid YAML in {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must contain a mapping at the top level")
    return data


def load_default_config() -> ExperimentConfig:
    return ExperimentConfig(**_read_yaml(DEFAULT_CONFIG_PATH))


def load_config(path: Optional[Union[str, Path]] = None) -> ExperimentConfig:
    """Packaged defaults, deep-merged with the YAML file at `path` when given"""
    data = _read_yaml(DEFAULT_CONFIG_PATH)
    if path is not None:
        data = deep_merge(data, _read_yaml(Path(path)))
    return ExperimentConfig(**data)
