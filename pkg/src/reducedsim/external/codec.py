"""
Encoders and decoders for the binary artifact formats in `contracts`.

Decoders validate magic, version and exact payload size and raise FormatError on any
mismatch.
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from pydantic import ValidationError

from reducedsim.core.trajectory import ParameterTrajectory, StateTrajectory, TimeGrid
from reducedsim.dataset.normalization import Normalization
from reducedsim.errors import DimensionError, FormatError, ReducedSimError
from reducedsim.external.contracts import (
    BASIS_MAGIC,
    DATASET_MAGIC,
    FLAG_CENTERED,
    FLAG_DENSE_HEAD,
    FLOAT,
    FORMAT_VERSION,
    INT,
    MODEL_MAGIC,
    TRAJECTORY_MAGIC,
    BasisHeader,
    DatasetManifestHeader,
    Header,
    ModelHeader,
    TrajectoryHeader,
)
from reducedsim.lstm.cell import LstmLayerParams
from reducedsim.lstm.network import LstmModel
from reducedsim.reduction.pod import ReducedBasis

MAGICS = {
    TRAJECTORY_MAGIC: "trajectory",
    BASIS_MAGIC: "basis",
    DATASET_MAGIC: "dataset manifest",
    MODEL_MAGIC: "model",
}

LAYER_FIELDS = ("W_f", "W_i", "W_c", "W_h", "b_f", "b_i", "b_c", "b_h")


class _Writer:
    def __init__(self, magic: bytes):
        self.parts = [magic, np.asarray([FORMAT_VERSION], dtype=INT).tobytes()]

    def ints(self, *values: int) -> "_Writer":
        self.parts.append(np.asarray(values, dtype=INT).tobytes())
        return self

    def floats(self, array) -> "_Writer":
        self.parts.append(np.ascontiguousarray(array, dtype=FLOAT).tobytes())
        return self

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


class _Reader:
    def __init__(self, data: bytes, magic: bytes):
        self.data = memoryview(data)
        self.pos = 0
        kind = MAGICS[magic]
        if len(data) < 16:
            raise FormatError(f"Truncated {kind} file: {len(data)} bytes")
        found = bytes(self.data[:8])
        if found != magic:
            raise FormatError(f"Bad magic for {kind} file: expected {magic!r}, found {found!r}")
        self.pos = 8
        version = int(self.ints(1)[0])
        if version != FORMAT_VERSION:
            raise FormatError(f"Unsupported {kind} format version {version} (expected {FORMAT_VERSION})")
        self.kind = kind

    def _take(self, n_bytes: int) -> memoryview:
        if self.pos + n_bytes > len(self.data):
            raise FormatError(
                f"Truncated {self.kind} file: needed {self.pos + n_bytes} bytes, have {len(self.data)}"
            )
        chunk = self.data[self.pos:self.pos + n_bytes]
        self.pos += n_bytes
        return chunk

    def ints(self, n: int) -> np.ndarray:
        return np.frombuffer(self._take(8 * n), dtype=INT).astype(np.int64)

    def floats(self, n: int, shape=None) -> np.ndarray:
        arr = np.frombuffer(self._take(8 * n), dtype=FLOAT).astype(np.float64)
        return arr.reshape(shape) if shape is not None else arr

    def finish(self):
        if self.pos != len(self.data):
            raise FormatError(f"{self.kind} file has {len(self.data) - self.pos} unexpected trailing bytes")


def _header(cls, **values) -> Header:
    try:
        return cls(**values)
    except ValidationError as exc:
        raise FormatError(f"Invalid {cls.__name__}: {exc}") from exc


def _guard(decode):
    """Report domain validation failures on decoded arrays as format errors"""
    def wrapper(data: bytes):
        try:
            return decode(data)
        except FormatError:
            raise
        except (ReducedSimError, ValueError) as exc:
            raise FormatError(f"Corrupt payload: {exc}") from exc
    wrapper.__name__ = decode.__name__
    wrapper.__doc__ = decode.__doc__
    return wrapper


# Trajectories

def encode_trajectory(states: StateTrajectory, params: ParameterTrajectory) -> bytes:
    if states.grid != params.grid:
        raise DimensionError(f"State grid {states.grid} differs from parameter grid {params.grid}")
    grid = states.grid
    return (
        _Writer(TRAJECTORY_MAGIC)
        .ints(states.n_state, grid.eta, params.n_channels)
        .floats([grid.dt, grid.t_start])
        .floats(states.states)
        .floats(params.values)
        .getvalue()
    )


@_guard
def decode_trajectory(data: bytes) -> Tuple[StateTrajectory, ParameterTrajectory]:
    reader = _Reader(data, TRAJECTORY_MAGIC)
    N, eta, l = (int(v) for v in reader.ints(3))
    dt, t_start = reader.floats(2)
    header = _header(TrajectoryHeader, n_state=N, eta=eta, n_channels=l, dt=float(dt), t_start=float(t_start))
    states = reader.floats(header.eta * header.n_state, (header.eta, header.n_state))
    values = reader.floats(header.eta * header.n_channels, (header.eta, header.n_channels))
    reader.finish()
    grid = TimeGrid(t_start=header.t_start, dt=header.dt, eta=header.eta)
    return StateTrajectory(grid, states), ParameterTrajectory(grid, values)


# Basis

def encode_basis(basis: ReducedBasis) -> bytes:
    flags = FLAG_CENTERED if basis.centered else 0
    writer = (
        _Writer(BASIS_MAGIC)
        .ints(basis.n_state, basis.r, len(basis.singular_values), flags)
        .floats(basis.V)
        .floats(basis.singular_values)
    )
    if basis.centered:
        writer.floats(basis.mean)
    return writer.getvalue()


@_guard
def decode_basis(data: bytes) -> ReducedBasis:
    reader = _Reader(data, BASIS_MAGIC)
    N, r, d, flags = (int(v) for v in reader.ints(4))
    header = _header(BasisHeader, n_state=N, r=r, d=d, centered=bool(flags & FLAG_CENTERED))
    V = reader.floats(header.n_state * header.r, (header.n_state, header.r))
    sigma = reader.floats(header.d)
    mean = reader.floats(header.n_state) if header.centered else None
    reader.finish()
    return ReducedBasis(V=V, singular_values=sigma, mean=mean)


# Dataset manifest

@dataclass(frozen=True)
class DatasetManifest:
    n_w: int
    train_ids: List[int]
    val_ids: List[int]
    test_ids: List[int]
    normalization: Normalization = field(repr=False)


def encode_dataset_manifest(manifest: DatasetManifest) -> bytes:
    norm = manifest.normalization
    writer = (
        _Writer(DATASET_MAGIC)
        .ints(norm.r, norm.l, manifest.n_w, len(manifest.train_ids), len(manifest.val_ids), len(manifest.test_ids))
    )
    for ids in (manifest.train_ids, manifest.val_ids, manifest.test_ids):
        if ids:
            writer.ints(*ids)
    for vec in norm.vectors():
        writer.floats(vec)
    return writer.getvalue()


@_guard
def decode_dataset_manifest(data: bytes) -> DatasetManifest:
    reader = _Reader(data, DATASET_MAGIC)
    values = [int(v) for v in reader.ints(6)]
    header = _header(
        DatasetManifestHeader,
        r=values[0], l=values[1], n_w=values[2], n_train=values[3], n_val=values[4], n_test=values[5],
    )
    ids = [reader.ints(n).tolist() for n in (header.n_train, header.n_val, header.n_test)]
    sizes = (header.r, header.r, header.l, header.l, header.r, header.r)
    vectors = [reader.floats(n) for n in sizes]
    reader.finish()
    return DatasetManifest(
        n_w=header.n_w,
        train_ids=ids[0],
        val_ids=ids[1],
        test_ids=ids[2],
        normalization=Normalization(*vectors),
    )


# Model

def encode_model(model: LstmModel) -> bytes:
    ints: List[int] = [len(model.layers)]
    for layer in model.layers:
        ints.extend((layer.n_x, layer.n_h))
    ints.extend((model.n_w, FLAG_DENSE_HEAD if model.dense_head else 0, model.r, model.l))
    writer = _Writer(MODEL_MAGIC).ints(*ints)
    for layer in model.layers:
        for name in LAYER_FIELDS:
            writer.floats(getattr(layer, name))
    if model.dense_head:
        writer.floats(model.W_y).floats(model.b_y)
    for vec in model.normalization.vectors():
        writer.floats(vec)
    return writer.getvalue()


def _read_layer(reader: _Reader, n_x: int, n_h: int) -> LstmLayerParams:
    shape = (n_h, n_h + n_x)
    weights = {name: reader.floats(shape[0] * shape[1], shape) for name in LAYER_FIELDS[:4]}
    biases = {name: reader.floats(n_h) for name in LAYER_FIELDS[4:]}
    return LstmLayerParams(**weights, **biases)


@_guard
def decode_model(data: bytes) -> LstmModel:
    reader = _Reader(data, MODEL_MAGIC)
    count = int(reader.ints(1)[0])
    if not 1 <= count <= 1024:
        raise FormatError(f"Implausible layer count {count} in model file")
    dims = reader.ints(2 * count).reshape(count, 2)
    n_w, flags, r, l = (int(v) for v in reader.ints(4))
    header = _header(
        ModelHeader,
        layers=[(int(a), int(b)) for a, b in dims],
        n_w=n_w, dense_head=bool(flags & FLAG_DENSE_HEAD), r=r, l=l,
    )
    layers = [_read_layer(reader, n_x, n_h) for n_x, n_h in header.layers]
    W_y = b_y = None
    if header.dense_head:
        top = header.layers[-1][1]
        W_y = reader.floats(header.r * top, (header.r, top))
        b_y = reader.floats(header.r)
    sizes = (header.r, header.r, header.l, header.l, header.r, header.r)
    normalization = Normalization(*[reader.floats(n) for n in sizes])
    reader.finish()
    return LstmModel(
        layers=layers, n_w=header.n_w, r=header.r, l=header.l,
        normalization=normalization, W_y=W_y, b_y=b_y,
    )


DECODERS = {
    TRAJECTORY_MAGIC: decode_trajectory,
    BASIS_MAGIC: decode_basis,
    DATASET_MAGIC: decode_dataset_manifest,
    MODEL_MAGIC: decode_model,
}


def check_artifact(data: bytes) -> str:
    """Fully decode an artifact of any known kind; returns its kind"""
    magic = bytes(data[:8])
    if magic not in DECODERS:
        raise FormatError(f"Unknown artifact magic {magic!r}")
    DECODERS[magic](data)
    return MAGICS[magic]