"""Test z-score normalization fitted on a windowed dataset."""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from reducedsim.dataset.normalization import SCALE_FLOOR, Normalization, fit_normalization
from reducedsim.dataset.windows import WindowedDataset, build_windows
from reducedsim.errors import ConfigError


def _dataset():
    rng = np.random.default_rng(0)
    z = 3.0 + 2.0 * rng.standard_normal((50, 2))
    mu = np.column_stack([rng.standard_normal(50), np.full(50, 7.0)])
    return build_windows([z], [mu], n_w=4), z, mu


def test_fit_uses_current_steps_and_targets():
    ds, z, mu = _dataset()
    norm = fit_normalization(ds)
    assert_allclose(norm.z_shift, z[:-1].mean(axis=0))
    assert_allclose(norm.z_scale, z[:-1].std(axis=0))
    assert_allclose(norm.mu_shift[0], mu[:-1, 0].mean())
    assert_allclose(norm.dz_shift, np.diff(z, axis=0).mean(axis=0))


def test_constant_feature_gets_floored_scale():
    ds, _, _ = _dataset()
    norm = fit_normalization(ds)
    assert norm.mu_shift[1] == 7.0
    assert norm.mu_scale[1] == SCALE_FLOOR


def test_apply_and_invert_are_inverse():
    ds, _, _ = _dataset()
    norm = fit_normalization(ds)
    x = np.random.default_rng(1).standard_normal((5, 4))
    assert_allclose(norm.invert_inputs(norm.apply_inputs(x)), x, atol=1e-12)
    dz = np.random.default_rng(2).standard_normal((5, 2))
    assert_allclose(norm.invert_targets(norm.apply_targets(dz)), dz, atol=1e-12)


def test_identity_changes_nothing():
    norm = Normalization.identity(3, 2)
    x = np.arange(5.0)
    assert_allclose(norm.apply_inputs(x), x)
    assert norm.r == 3 and norm.l == 2
    assert len(norm.vectors()) == 6


def test_non_positive_scale_rejected():
    with pytest.raises(ConfigError):
        Normalization(np.zeros(1), np.zeros(1), np.zeros(1), np.ones(1), np.zeros(1), np.ones(1))


def test_empty_dataset_rejected():
    empty = WindowedDataset(
        inputs=np.zeros((0, 2, 3)), lengths=np.zeros(0, dtype=np.int64), targets=np.zeros((0, 2)),
        origins=np.zeros((0, 2), dtype=np.int64), n_w=2, r=2, l=1,
    )
    with pytest.raises(ConfigError):
        fit_normalization(empty)
