"""Test binary artifact formats - exact round trips and corruption handling."""
import numpy as np
import pytest

from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory, TimeGrid
from reducedsim.dataset.normalization import Normalization
from reducedsim.errors import DimensionError, FormatError
from reducedsim.external.codec import (
    DatasetManifest,
    check_artifact,
    decode_basis,
    decode_dataset_manifest,
    decode_model,
    decode_trajectory,
    encode_basis,
    encode_dataset_manifest,
    encode_model,
    encode_trajectory,
)
from reducedsim.external.contracts import FORMAT_VERSION, MODEL_MAGIC
from reducedsim.lstm.network import init_model, parameters
from reducedsim.reduction.pod import ReducedBasis


def _trajectory():
    rng = np.random.default_rng(0)
    grid = TimeGrid(0.5, 0.025, 5)
    return StateTrajectory(grid, rng.standard_normal((5, 6))), ParameterTrajectory(grid, rng.standard_normal((5, 3)))


def _model(dense_head=True):
    rng = np.random.default_rng(1)
    norm = Normalization(
        rng.standard_normal(2), rng.uniform(0.5, 2, 2), rng.standard_normal(1),
        rng.uniform(0.5, 2, 1), rng.standard_normal(2), rng.uniform(0.5, 2, 2),
    )
    layers = [4, 3] if dense_head else [4, 2]
    return init_model(2, 1, n_w=3, layer_sizes=layers, dense_head=dense_head, seed=2, normalization=norm)


def test_trajectory_round_trip_is_exact():
    states, params = _trajectory()
    decoded_states, decoded_params = decode_trajectory(encode_trajectory(states, params))
    assert decoded_states.grid == states.grid
    assert np.array_equal(decoded_states.states, states.states)
    assert np.array_equal(decoded_params.values, params.values)


def test_trajectory_grids_must_agree():
    states, _ = _trajectory()
    params = ParameterTrajectory(TimeGrid(0.0, 0.025, 5), np.zeros((5, 3)))
    with pytest.raises(DimensionError):
        encode_trajectory(states, params)


@pytest.mark.parametrize("centered", [False, True])
def test_basis_round_trip_is_exact(centered):
    rng = np.random.default_rng(3)
    Q, _ = np.linalg.qr(rng.standard_normal((7, 3)))
    basis = ReducedBasis(V=Q, singular_values=np.sort(rng.uniform(0, 5, 7))[::-1],
                         mean=rng.standard_normal(7) if centered else None)
    decoded = decode_basis(encode_basis(basis))
    assert np.array_equal(decoded.V, basis.V)
    assert np.array_equal(decoded.singular_values, basis.singular_values)
    assert decoded.centered == centered
    if centered:
        assert np.array_equal(decoded.mean, basis.mean)


@pytest.mark.parametrize("dense_head", [False, True])
def test_model_round_trip_is_exact(dense_head):
    model = _model(dense_head)
    decoded = decode_model(encode_model(model))
    assert (decoded.n_w, decoded.r, decoded.l, decoded.dense_head) == (3, 2, 1, dense_head)
    original, restored = parameters(model), parameters(decoded)
    assert list(original) == list(restored)
    for name in original:
        assert np.array_equal(original[name], restored[name])
    for a, b in zip(model.normalization.vectors(), decoded.normalization.vectors()):
        assert np.array_equal(a, b)


def test_dataset_manifest_round_trip():
    manifest = DatasetManifest(
        n_w=8, train_ids=[0, 3, 4], val_ids=[1], test_ids=[], normalization=Normalization.identity(2, 3),
    )
    decoded = decode_dataset_manifest(encode_dataset_manifest(manifest))
    assert (decoded.n_w, decoded.train_ids, decoded.val_ids, decoded.test_ids) == (8, [0, 3, 4], [1], [])
    assert decoded.normalization.l == 3


def test_bad_magic_rejected():
    data = bytearray(encode_model(_model()))
    data[0] ^= 0xFF
    with pytest.raises(FormatError):
        decode_model(bytes(data))
    with pytest.raises(FormatError):
        check_artifact(bytes(data))


def test_wrong_kind_rejected():
    states, params = _trajectory()
    with pytest.raises(FormatError):
        decode_model(encode_trajectory(states, params))


def test_unsupported_version_rejected():
    data = bytearray(encode_model(_model()))
    data[8:16] = np.asarray([FORMAT_VERSION + 1], dtype="<i8").tobytes()
    with pytest.raises(FormatError):
        decode_model(bytes(data))


def test_truncated_and_padded_payloads_rejected():
    data = encode_model(_model())
    with pytest.raises(FormatError):
        decode_model(data[:-8])
    with pytest.raises(FormatError):
        decode_model(data + b"\x00" * 8)
    with pytest.raises(FormatError):
        decode_model(MODEL_MAGIC)


def test_corrupt_header_values_rejected():
    data = bytearray(encode_model(_model()))
    data[16:24] = np.asarray([0], dtype="<i8").tobytes()
    with pytest.raises(FormatError):
        decode_model(bytes(data))


def test_non_finite_weights_reported_as_format_error():
    model = _model()
    data = bytearray(encode_model(model))
    # first float after the integer header: 8 magic + 8 version + 8 * (1 + 2*2 + 4) ints
    offset = 16 + 8 * 9
    data[offset:offset + 8] = np.asarray([np.nan], dtype="<f8").tobytes()
    with pytest.raises(FormatError):
        decode_model(bytes(data))


def test_check_artifact_names_the_kind():
    states, params = _trajectory()
    assert check_artifact(encode_trajectory(states, params)) == "trajectory"
    assert check_artifact(encode_model(_model())) == "model"
