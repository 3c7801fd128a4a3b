"""Test backpropagation through time against finite differences."""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from reducedsim.dataset.normalization import Normalization
from reducedsim.dataset.windows import Batch, build_windows
from reducedsim.errors import DimensionError, TrainingDivergenceError
from reducedsim.lstm.backward import backward, evaluate_loss, loss_se, sample_losses
from reducedsim.lstm.network import init_model, parameters


def _model(dense_head=True, layers=(4, 4)):
    norm = Normalization(
        z_shift=np.array([0.2, -0.1]), z_scale=np.array([1.5, 0.7]),
        mu_shift=np.array([1.0]), mu_scale=np.array([2.0]),
        dz_shift=np.array([0.01, 0.0]), dz_scale=np.array([0.3, 0.2]),
    )
    return init_model(r=2, l=1, n_w=3, layer_sizes=list(layers), dense_head=dense_head, seed=0, normalization=norm)


def _batch(lengths=(1, 2, 3, 3), seed=1):
    rng = np.random.default_rng(seed)
    B = len(lengths)
    inputs = rng.standard_normal((B, 3, 3))
    mask = np.zeros((B, 3), dtype=bool)
    for b, w in enumerate(lengths):
        mask[b, 3 - w:] = True
        inputs[b, :3 - w] = 0.0
    origins = np.column_stack([np.zeros(B, dtype=np.int64), np.arange(B)])
    return Batch(inputs=inputs, mask=mask, targets=rng.standard_normal((B, 2)), origins=origins)


@pytest.mark.parametrize("dense_head,layers", [(True, (4, 4)), (False, (3, 2))])
def test_gradients_match_central_differences(dense_head, layers):
    model = _model(dense_head, layers)
    batch = _batch()
    grads, _ = backward(model, batch)
    step = 1e-5
    worst = 0.0
    for name, p in parameters(model).items():
        assert grads[name].shape == p.shape
        for idx in np.ndindex(p.shape):
            saved = p[idx]
            p[idx] = saved + step
            _, up = backward(model, batch)
            p[idx] = saved - step
            _, down = backward(model, batch)
            p[idx] = saved
            numeric = (up - down) / (2.0 * step)
            analytic = grads[name][idx]
            rel = abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-6)
            worst = max(worst, rel)
    assert worst < 1e-4


def test_single_step_windows_give_no_forget_or_recurrent_gradient():
    model = _model()
    grads, _ = backward(model, _batch(lengths=(1, 1, 1)))
    for k, layer in enumerate(model.layers):
        assert np.all(grads[f"layers.{k}.W_f"] == 0.0)
        assert np.all(grads[f"layers.{k}.b_f"] == 0.0)
        for g in "fich":
            assert np.all(grads[f"layers.{k}.W_{g}"][:, :layer.n_h] == 0.0)


def test_duplicated_samples_leave_mean_loss_and_gradients_unchanged():
    rng = np.random.default_rng(3)
    z = rng.standard_normal((6, 2))
    mu = rng.standard_normal((6, 1))
    ds = build_windows([z], [mu], n_w=3)
    model = _model()
    pair = [ds.sample(1), ds.sample(4)]
    doubled = [ds.sample(1), ds.sample(1), ds.sample(4), ds.sample(4)]
    g1, l1 = backward(model, pair)
    g2, l2 = backward(model, doubled)
    assert abs(l1 - l2) < 1e-12
    for name in g1:
        assert_allclose(g1[name], g2[name], atol=1e-12)


def test_gradient_keys_follow_parameter_order():
    model = _model()
    grads, _ = backward(model, _batch())
    assert list(grads) == list(parameters(model))


def test_non_finite_loss_names_the_sample():
    model = _model()
    model.layers[0].W_c[0, 0] = np.nan
    batch = _batch()
    with pytest.raises(TrainingDivergenceError) as excinfo:
        backward(model, batch)
    assert excinfo.value.origin == (0, 0)


def test_dataset_loss_matches_batch_loss():
    rng = np.random.default_rng(5)
    ds = build_windows([rng.standard_normal((9, 2))], [rng.standard_normal((9, 1))], n_w=3)
    model = _model()
    _, whole = backward(model, ds.batch(np.arange(len(ds))))
    assert abs(evaluate_loss(model, ds, batch_size=3) - whole) < 1e-12
    assert sample_losses(model, ds).shape == (8,)


def test_loss_se():
    assert loss_se(np.array([1.0, 2.0]), np.array([1.0, 0.0])) == 2.0
    with pytest.raises(DimensionError):
        loss_se(np.zeros(2), np.zeros(3))
