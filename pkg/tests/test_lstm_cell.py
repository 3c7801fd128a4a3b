"""Test the LSTM cell - single steps with hand-checkable weights."""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from reducedsim.errors import DimensionError, NumericalError
from reducedsim.lstm.cell import (
    CellState,
    LstmLayerParams,
    cell_forward,
    gate_step,
    pack_layer,
    unpack_gradients,
)


def _constant_params(n_h, n_x, weight, bias=0.0):
    W = np.full((n_h, n_h + n_x), weight)
    b = np.full(n_h, bias)
    return LstmLayerParams(W_f=W, W_i=W, W_c=W, W_h=W, b_f=b, b_i=b, b_c=b, b_h=b)


def _random_params(n_h, n_x, seed):
    rng = np.random.default_rng(seed)
    shape = (n_h, n_h + n_x)
    return LstmLayerParams(
        **{f"W_{g}": rng.uniform(-1, 1, shape) for g in "fich"},
        **{f"b_{g}": rng.uniform(-1, 1, n_h) for g in "fich"},
    )


def test_scalar_cell_with_unit_weights():
    params = _constant_params(1, 1, 1.0)
    state = cell_forward(np.array([1.0]), CellState.zeros(1), params)
    s = 1.0 / (1.0 + np.exp(-1.0))
    c = s * np.tanh(1.0)
    assert_allclose(state.c, [c], rtol=1e-14)
    assert_allclose(state.h, [s * np.tanh(c)], rtol=1e-14)
    assert abs(state.c[0] - 0.55677) < 1e-4
    assert abs(state.h[0] - 0.36961) < 1e-4


def test_zero_weights_from_rest_stay_at_rest():
    params = _constant_params(3, 2, 0.0)
    state = cell_forward(np.array([5.0, -2.0]), CellState.zeros(3), params)
    assert np.all(state.h == 0.0)
    assert np.all(state.c == 0.0)


def test_zero_weights_halve_the_cell_state():
    params = _constant_params(2, 1, 0.0)
    prev = CellState(h=np.zeros(2), c=np.array([1.0, -2.0]))
    state = cell_forward(np.array([3.0]), prev, params)
    assert_allclose(state.c, [0.5, -1.0])
    assert_allclose(state.h, 0.5 * np.tanh([0.5, -1.0]))


def test_hidden_state_is_bounded():
    params = _random_params(4, 3, seed=0)
    state = CellState.zeros(4)
    rng = np.random.default_rng(1)
    for _ in range(20):
        state = cell_forward(100.0 * rng.standard_normal(3), state, params)
        assert np.all(np.abs(state.h) < 1.0)


def test_packed_step_matches_cell_forward():
    params = _random_params(3, 2, seed=2)
    rng = np.random.default_rng(3)
    prev = CellState(h=rng.uniform(-1, 1, 3), c=rng.uniform(-1, 1, 3))
    x = rng.standard_normal(2)
    expected = cell_forward(x, prev, params)
    layer = pack_layer(params)
    h, c, *_ = gate_step(layer, (x @ layer.Wx + layer.b)[None], prev.h[None], prev.c[None])
    assert_allclose(h[0], expected.h, atol=1e-14)
    assert_allclose(c[0], expected.c, atol=1e-14)


def test_unpack_inverts_pack():
    params = _random_params(3, 2, seed=4)
    layer = pack_layer(params)
    unpacked = unpack_gradients(layer.Wx, layer.Wh, layer.b)
    assert list(unpacked) == list(params.arrays())
    for name, arr in params.arrays().items():
        assert_allclose(unpacked[name], arr)


def test_shape_and_finiteness_checks():
    params = _random_params(2, 1, seed=5)
    with pytest.raises(DimensionError):
        cell_forward(np.zeros(2), CellState.zeros(2), params)
    with pytest.raises(DimensionError):
        cell_forward(np.zeros(1), CellState.zeros(3), params)
    bad = params.arrays()
    bad["b_c"] = np.array([0.0, np.nan])
    with pytest.raises(NumericalError):
        LstmLayerParams(**bad)
    wrong = params.arrays()
    wrong["W_i"] = np.zeros((2, 4))
    with pytest.raises(DimensionError):
        LstmLayerParams(**wrong)
