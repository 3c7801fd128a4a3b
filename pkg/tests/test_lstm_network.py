"""Test the stacked LSTM - composition, masking and normalization."""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from reducedsim.dataset.normalization import Normalization
from reducedsim.errors import ConfigError, DimensionError
from reducedsim.lstm.cell import CellState, cell_forward
from reducedsim.lstm.network import (
    LstmModel,
    forward,
    forward_batch,
    init_model,
    pack,
    parameters,
    predict,
)


def _by_hand(model, window):
    """Reference evaluation: one cell_forward per layer and step"""
    states = [CellState.zeros(layer.n_h) for layer in model.layers]
    for row in window:
        x = row
        for k, layer in enumerate(model.layers):
            states[k] = cell_forward(x, states[k], layer)
            x = states[k].h
    y = states[-1].h
    if model.dense_head:
        y = model.W_y @ y + model.b_y
    return y


@pytest.mark.parametrize("dense_head,layers", [(False, [5, 2]), (True, [4, 3, 6])])
def test_forward_matches_stepwise_composition(dense_head, layers):
    model = init_model(r=2, l=1, n_w=4, layer_sizes=layers, dense_head=dense_head, seed=1)
    window = np.random.default_rng(0).standard_normal((4, 3))
    assert_allclose(forward(model, window), _by_hand(model, window), atol=1e-12)


def test_window_of_one_is_a_single_step():
    model = init_model(r=2, l=2, n_w=3, layer_sizes=[2], seed=2)
    row = np.random.default_rng(1).standard_normal(4)
    expected = cell_forward(row, CellState.zeros(2), model.layers[0]).h
    assert_allclose(forward(model, row[None]), expected, atol=1e-14)


def test_left_padding_has_no_effect():
    rng = np.random.default_rng(7)
    for case in range(100):
        n_w = int(rng.integers(1, 9))
        model = init_model(r=3, l=2, n_w=n_w, layer_sizes=[4, 3], seed=case)
        w = int(rng.integers(1, n_w + 1))
        window = rng.standard_normal((w, 5))
        padded = np.vstack([1e3 * rng.standard_normal((n_w - w, 5)), window])
        assert_allclose(forward(model, padded, valid_length=w), forward(model, window), atol=1e-12)


def test_batch_rows_are_independent():
    model = init_model(r=2, l=1, n_w=3, layer_sizes=[4], dense_head=True, seed=3)
    rng = np.random.default_rng(2)
    inputs = rng.standard_normal((5, 3, 3))
    mask = np.ones((5, 3), dtype=bool)
    mask[1, 0] = False
    mask[3, :2] = False
    out = forward_batch(model, inputs, mask)
    for b in range(5):
        w = int(mask[b].sum())
        assert_allclose(out[b], forward(model, inputs[b, 3 - w:]), atol=1e-12)


def test_output_without_dense_head_is_bounded():
    model = init_model(r=3, l=1, n_w=5, layer_sizes=[3], seed=4)
    window = 50.0 * np.random.default_rng(3).standard_normal((5, 4))
    assert np.all(np.abs(forward(model, window)) < 1.0)


def test_predict_applies_normalization():
    r, l = 2, 1
    norm = Normalization(
        z_shift=np.array([1.0, -1.0]), z_scale=np.array([2.0, 0.5]),
        mu_shift=np.array([9.81]), mu_scale=np.array([3.0]),
        dz_shift=np.array([0.1, 0.0]), dz_scale=np.array([0.01, 0.2]),
    )
    model = init_model(r, l, n_w=3, layer_sizes=[4], dense_head=True, seed=5, normalization=norm)
    raw = np.random.default_rng(4).standard_normal((3, 3))
    y = forward_batch(model, norm.apply_inputs(raw)[None], np.ones((1, 3), dtype=bool))[0]
    assert_allclose(predict(model, raw), norm.invert_targets(y), atol=1e-14)
    assert_allclose(predict(model, raw, packed=pack(model)), predict(model, raw))


def test_forward_argument_checks():
    model = init_model(r=2, l=1, n_w=3, layer_sizes=[2], seed=0)
    with pytest.raises(ConfigError):
        forward(model, np.zeros((3, 3)), valid_length=0)
    with pytest.raises(DimensionError):
        forward(model, np.zeros((4, 3)))
    with pytest.raises(DimensionError):
        forward(model, np.zeros((3, 4)))


def test_init_is_seeded_with_forget_bias_one():
    a = init_model(r=2, l=1, n_w=3, layer_sizes=[4, 2], seed=9)
    b = init_model(r=2, l=1, n_w=3, layer_sizes=[4, 2], seed=9)
    pa, pb = parameters(a), parameters(b)
    assert list(pa) == list(pb)
    for name in pa:
        assert np.array_equal(pa[name], pb[name])
    assert np.all(a.layers[0].b_f == 1.0)
    assert np.all(a.layers[1].b_i == 0.0)
    assert a.layers[0].W_f.shape == (4, 7)
    assert a.layers[1].W_f.shape == (2, 6)


def test_parameter_names_and_live_references():
    model = init_model(r=2, l=1, n_w=3, layer_sizes=[3], dense_head=True, seed=1)
    params = parameters(model)
    assert list(params)[:2] == ["layers.0.W_f", "layers.0.W_i"]
    assert list(params)[-2:] == ["dense.W_y", "dense.b_y"]
    params["dense.b_y"][0] = 4.0
    assert model.b_y[0] == 4.0


def test_copy_is_independent():
    model = init_model(r=2, l=1, n_w=3, layer_sizes=[2], seed=1)
    clone = model.copy()
    clone.layers[0].W_c[0, 0] += 1.0
    assert model.layers[0].W_c[0, 0] != clone.layers[0].W_c[0, 0]


def test_top_layer_must_match_r_without_dense_head():
    model = init_model(r=2, l=1, n_w=3, layer_sizes=[4], dense_head=True, seed=0)
    with pytest.raises(DimensionError):
        LstmModel(layers=model.layers, n_w=3, r=2, l=1, normalization=model.normalization)
