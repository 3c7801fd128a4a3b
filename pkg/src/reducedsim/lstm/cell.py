"""
LSTM cell.

Gate pre-activations act on the concatenation [h_prev, x]. W_h/b_h parametrize the
output gate, so h = g_o * tanh(c).
"""
from dataclasses import dataclass, field, fields
from typing import Dict, Tuple

import numpy as np
from scipy.special import expit

from reducedsim.errors import DimensionError, NumericalError

GATES = ("f", "i", "c", "h")


@dataclass
class LstmLayerParams:
    """Weights n_h x (n_h + n_x) and biases (n_h,) for the forget, input, candidate and output maps"""
    W_f: np.ndarray = field(repr=False)
    W_i: np.ndarray = field(repr=False)
    W_c: np.ndarray = field(repr=False)
    W_h: np.ndarray = field(repr=False)
    b_f: np.ndarray = field(repr=False)
    b_i: np.ndarray = field(repr=False)
    b_c: np.ndarray = field(repr=False)
    b_h: np.ndarray = field(repr=False)

    def __post_init__(self):
        for f in fields(self):
            setattr(self, f.name, np.asarray(getattr(self, f.name), dtype=np.float64))
        n_h, width = self.W_f.shape
        if width <= n_h:
            raise DimensionError(f"Gate weights must be n_h x (n_h + n_x) with n_x >= 1, got {self.W_f.shape}")
        for g in GATES:
            W = getattr(self, f"W_{g}")
            b = getattr(self, f"b_{g}")
            if W.shape != (n_h, width):
                raise DimensionError(f"W_{g} has shape {W.shape}, expected {(n_h, width)}")
            if b.shape != (n_h,):
                raise DimensionError(f"b_{g} has shape {b.shape}, expected {(n_h,)}")
            if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
                raise NumericalError(f"Layer parameters W_{g}/b_{g} contain non-finite values")

    @property
    def n_h(self) -> int:
        return self.W_f.shape[0]

    @property
    def n_x(self) -> int:
        return self.W_f.shape[1] - self.W_f.shape[0]

    def arrays(self) -> Dict[str, np.ndarray]:
        """Parameter arrays keyed by field name, in storage order"""
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def copy(self) -> "LstmLayerParams":
        return LstmLayerParams(**{k: v.copy() for k, v in self.arrays().items()})


@dataclass(frozen=True)
class CellState:
    h: np.ndarray
    c: np.ndarray

    @classmethod
    def zeros(cls, n_h: int, batch: Tuple[int, ...] = ()) -> "CellState":
        return cls(h=np.zeros(batch + (n_h,)), c=np.zeros(batch + (n_h,)))


def cell_forward(x: np.ndarray, prev: CellState, params: LstmLayerParams) -> CellState:
    """One step of the cell for a single input vector x of length n_x"""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (params.n_x,):
        raise DimensionError(f"Cell input has shape {x.shape}, expected ({params.n_x},)")
    if prev.h.shape != (params.n_h,) or prev.c.shape != (params.n_h,):
        raise DimensionError(f"Cell state must have length {params.n_h}")
    hx = np.concatenate([prev.h, x])
    g_f = expit(params.W_f @ hx + params.b_f)
    g_i = expit(params.W_i @ hx + params.b_i)
    c_hat = np.tanh(params.W_c @ hx + params.b_c)
    g_o = expit(params.W_h @ hx + params.b_h)
    c = g_f * prev.c + g_i * c_hat
    return CellState(h=g_o * np.tanh(c), c=c)


@dataclass(frozen=True)
class PackedLayer:
    """
    Gate weights regrouped for batched evaluation.
    Wx: (n_x, 4 n_h), Wh: (n_h, 4 n_h), b: (4 n_h,); gate blocks in f, i, c, h order.
    """
    Wx: np.ndarray = field(repr=False)
    Wh: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    n_h: int


def pack_layer(params: LstmLayerParams) -> PackedLayer:
    n_h = params.n_h
    W = np.concatenate([params.W_f, params.W_i, params.W_c, params.W_h], axis=0)
    return PackedLayer(
        Wx=np.ascontiguousarray(W[:, n_h:].T),
        Wh=np.ascontiguousarray(W[:, :n_h].T),
        b=np.concatenate([params.b_f, params.b_i, params.b_c, params.b_h]),
        n_h=n_h,
    )


def unpack_gradients(dWx: np.ndarray, dWh: np.ndarray, db: np.ndarray) -> Dict[str, np.ndarray]:
    """Inverse of pack_layer for gradient arrays"""
    n_h = dWh.shape[0]
    out = {}
    for k, g in enumerate(GATES):
        cols = slice(k * n_h, (k + 1) * n_h)
        out[f"W_{g}"] = np.concatenate([dWh[:, cols].T, dWx[:, cols].T], axis=1)
        out[f"b_{g}"] = db[cols].copy()
    return {name: out[name] for name in
            ("W_f", "W_i", "W_c", "W_h", "b_f", "b_i", "b_c", "b_h")}


def gate_step(layer: PackedLayer, projected: np.ndarray, h: np.ndarray, c: np.ndarray):
    """
    Batched step from precomputed input projections (B, 4 n_h).
    Returns (h_new, c_new, f, i, g, o, tanh(c_new)).
    """
    n_h = layer.n_h
    a = projected + h @ layer.Wh
    f = expit(a[:, :n_h])
    i = expit(a[:, n_h:2 * n_h])
    g = np.tanh(a[:, 2 * n_h:3 * n_h])
    o = expit(a[:, 3 * n_h:])
    c_new = f * c + i * g
    tc = np.tanh(c_new)
    return o * tc, c_new, f, i, g, o, tc
