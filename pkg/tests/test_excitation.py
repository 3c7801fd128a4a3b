"""Test seeded parameter-set generation."""
import numpy as np
import pytest

from reducedsim.core.types import ExcitationSpec, GridConfig
from reducedsim.errors import ConfigError
from reducedsim.hifi.excitation import generate_parameter_set


def test_same_seed_same_parameter_set():
    spec = ExcitationSpec(n_channels=2)
    a = generate_parameter_set(4, 11, spec)
    b = generate_parameter_set(4, 11, spec)
    for x, y in zip(a, b):
        assert x.grid == y.grid
        assert np.array_equal(x.values, y.values)


def test_different_seeds_differ():
    spec = ExcitationSpec(n_channels=2)
    a = generate_parameter_set(1, 1, spec)[0]
    b = generate_parameter_set(1, 2, spec)[0]
    assert a.grid != b.grid or not np.array_equal(a.values, b.values)


def test_amplitude_bound_and_bias():
    spec = ExcitationSpec(n_channels=3, amplitude=4.0, bias=[0.0, 1.0, -9.81])
    for mu in generate_parameter_set(10, 5, spec):
        deviation = mu.values - np.array(spec.bias)[None, :]
        assert np.max(np.abs(deviation)) <= 4.0 + 1e-12


def test_excitation_starts_at_bias():
    spec = ExcitationSpec(n_channels=3, bias=[0.5, 0.0, -9.81])
    for mu in generate_parameter_set(5, 0, spec):
        assert np.array_equal(mu.values[0], np.array(spec.bias))


def test_lengths_follow_duration_range():
    grid = GridConfig(dt=0.025, duration=(1.825, 4.075))
    for mu in generate_parameter_set(20, 3, ExcitationSpec(), grid):
        assert 74 <= mu.grid.eta <= 164
        assert mu.grid.dt == 0.025


def test_zero_amplitude_gives_constant_bias():
    spec = ExcitationSpec(n_channels=1, amplitude=0.0, bias=[2.0])
    mu = generate_parameter_set(1, 0, spec)[0]
    assert np.all(mu.values == 2.0)


def test_invalid_bounds_rejected():
    with pytest.raises(ConfigError):
        ExcitationSpec(freq_min=3.0, freq_max=1.0)
    with pytest.raises(ConfigError):
        ExcitationSpec(n_channels=2, bias=[1.0])
    with pytest.raises(ConfigError):
        ExcitationSpec(amplitude=-1.0)
    with pytest.raises(ConfigError):
        generate_parameter_set(0, 0, ExcitationSpec())
