"""Test RMSprop updates and gradient clipping."""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from reducedsim.errors import ConfigError, DimensionError
from reducedsim.lstm.optimizer import RmspropState, clip_by_global_norm, global_norm, rmsprop_step


def test_first_step_on_a_scalar():
    params = {"w": np.array([1.0])}
    state = RmspropState.create(params, learning_rate=1e-3)
    rmsprop_step(params, {"w": np.array([1.0])}, state)
    assert_allclose(state.accumulators["w"], [0.1])
    assert_allclose(1.0 - params["w"], [1e-3 / (np.sqrt(0.1) + 1e-7)], rtol=1e-12)
    assert abs(1.0 - params["w"][0] - 0.0031623) < 1e-6


def test_zero_gradient_only_decays_accumulators():
    params = {"w": np.array([2.0, -1.0])}
    state = RmspropState.create(params, learning_rate=0.1)
    state.accumulators["w"][:] = [1.0, 4.0]
    rmsprop_step(params, {"w": np.zeros(2)}, state)
    assert np.array_equal(params["w"], [2.0, -1.0])
    assert_allclose(state.accumulators["w"], [0.9, 3.6])


def test_updates_in_place():
    w = np.zeros((2, 2))
    params = {"w": w}
    state = RmspropState.create(params, learning_rate=0.01)
    rmsprop_step(params, {"w": np.ones((2, 2))}, state)
    assert np.all(w < 0.0)


def test_constant_gradient_steps_shrink():
    params = {"w": np.array([0.0])}
    state = RmspropState.create(params, learning_rate=0.01)
    previous = 0.0
    steps = []
    for _ in range(5):
        rmsprop_step(params, {"w": np.array([1.0])}, state)
        steps.append(previous - params["w"][0])
        previous = params["w"][0]
    assert all(a > b for a, b in zip(steps, steps[1:]))


def test_gradient_names_and_shapes_checked():
    params = {"w": np.zeros(2)}
    state = RmspropState.create(params, learning_rate=0.01)
    with pytest.raises(DimensionError):
        rmsprop_step(params, {"v": np.zeros(2)}, state)
    with pytest.raises(DimensionError):
        rmsprop_step(params, {"w": np.zeros(3)}, state)


def test_invalid_hyperparameters_rejected():
    with pytest.raises(ConfigError):
        RmspropState(learning_rate=0.0)
    with pytest.raises(ConfigError):
        RmspropState(learning_rate=0.1, rho=1.0)


def test_clip_by_global_norm():
    grads = {"a": np.array([3.0]), "b": np.array([4.0])}
    assert global_norm(grads) == 5.0
    clipped = clip_by_global_norm(grads, 1.0)
    assert_allclose(global_norm(clipped), 1.0)
    assert_allclose(clipped["a"] / clipped["b"], 0.75)
    assert clip_by_global_norm(grads, 10.0) is grads
    assert clip_by_global_norm(grads, None) is grads
