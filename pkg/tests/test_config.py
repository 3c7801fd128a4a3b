"""Test configuration loading and validation."""
from pathlib import Path

import pytest

from reducedsim.config import ExperimentConfig, deep_merge, load_config, load_default_config
from reducedsim.errors import ConfigError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_defaults_load():
    config = load_default_config()
    assert config.hifi.n_state == 300
    assert config.kappa == 107
    assert config.network.layers[-1] == config.reduction.r
    assert load_config() == config


def test_bundled_configs_are_valid():
    for name in ("smoke.yaml", "desk.yaml", "full.yaml"):
        config = load_config(CONFIGS / name)
        assert config.excitation.n_channels == config.hifi.dims_per_node


def test_user_file_overrides_defaults(tmp_path):
    path = tmp_path / "c.yaml"
    path.write_text("reduction:\n  r: 5\nnetwork:\n  layers: [8, 5]\n")
    config = load_config(path)
    assert config.reduction.r == 5
    assert config.network.layers == [8, 5]
    assert config.hifi.n_node == 100


def test_seeds_flow_into_split_and_training():
    config = ExperimentConfig(seeds={"split": 3, "init": 4, "shuffle": 5})
    assert config.split_spec().seed == 3
    assert config.train_config().seed == 4
    assert config.train_config().shuffle_seed == 5


def test_output_dir_override():
    config = ExperimentConfig()
    assert config.with_output_dir(None) is config
    assert config.with_output_dir("x/y").output_dir == "x/y"


def test_invalid_values_rejected(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig(grid={"dt": -1.0})
    with pytest.raises(ConfigError):
        ExperimentConfig(unknown_key=1)
    with pytest.raises(ConfigError):
        ExperimentConfig(excitation={"n_channels": 2})
    with pytest.raises(ConfigError):
        ExperimentConfig(reduction={"r": 5})
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("- just\n- a list\n")
    with pytest.raises(ConfigError):
        load_config(bad)


def test_deep_merge_keeps_untouched_keys():
    merged = deep_merge({"a": {"b": 1, "c": 2}, "d": 3}, {"a": {"b": 5}})
    assert merged == {"a": {"b": 5, "c": 2}, "d": 3}
