"""
Stacked LSTM regressor for reduced-state differences.

Inputs are time-major windows (T, r+l) or batches (B, T, r+l) with a boolean mask
(B, T). Hidden and cell states start at zero for every window; on masked steps they are
carried through unchanged, so left padding has no effect on the output. The output is the
top layer's last hidden state, optionally followed by a dense map to R^r.

Network outputs live in normalized target space; `forward` and `predict` denormalize.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np

from reducedsim.dataset.normalization import Normalization
from reducedsim.errors import ConfigError, DimensionError
from reducedsim.lstm.cell import CellState, LstmLayerParams, PackedLayer, gate_step, pack_layer

FORGET_BIAS = 1.0


@dataclass
class LstmModel:
    layers: List[LstmLayerParams]
    n_w: int
    r: int
    l: int
    normalization: Normalization = field(repr=False)
    W_y: Optional[np.ndarray] = field(default=None, repr=False)
    b_y: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.layers:
            raise ConfigError("Model needs at least one LSTM layer")
        if self.n_w < 1:
            raise ConfigError(f"Window length n_w must be >= 1, got {self.n_w}")
        if self.layers[0].n_x != self.r + self.l:
            raise DimensionError(f"First layer takes {self.layers[0].n_x} inputs, expected r+l={self.r + self.l}")
        for k in range(1, len(self.layers)):
            if self.layers[k].n_x != self.layers[k - 1].n_h:
                raise DimensionError(
                    f"Layer {k} takes {self.layers[k].n_x} inputs but layer {k - 1} has {self.layers[k - 1].n_h} units"
                )
        top = self.layers[-1].n_h
        if (self.W_y is None) != (self.b_y is None):
            raise ConfigError("Dense head needs both W_y and b_y")
        if self.W_y is None:
            if top != self.r:
                raise DimensionError(f"Without a dense head the last layer must have r={self.r} units, got {top}")
        else:
            self.W_y = np.asarray(self.W_y, dtype=np.float64)
            self.b_y = np.asarray(self.b_y, dtype=np.float64)
            if self.W_y.shape != (self.r, top) or self.b_y.shape != (self.r,):
                raise DimensionError(f"Dense head must be {(self.r, top)} with bias ({self.r},)")
        if self.normalization.r != self.r or self.normalization.l != self.l:
            raise DimensionError(
                f"Normalization is for r={self.normalization.r}, l={self.normalization.l}; "
                f"model has r={self.r}, l={self.l}"
            )

    @property
    def dense_head(self) -> bool:
        return self.W_y is not None

    @property
    def layer_sizes(self) -> List[int]:
        return [layer.n_h for layer in self.layers]

    def copy(self) -> "LstmModel":
        return LstmModel(
            layers=[layer.copy() for layer in self.layers],
            n_w=self.n_w,
            r=self.r,
            l=self.l,
            normalization=self.normalization,
            W_y=None if self.W_y is None else self.W_y.copy(),
            b_y=None if self.b_y is None else self.b_y.copy(),
        )

    def with_normalization(self, normalization: Normalization) -> "LstmModel":
        return replace(self.copy(), normalization=normalization)


def parameters(model: LstmModel) -> Dict[str, np.ndarray]:
    """Every trainable array keyed as 'layers.<k>.<name>' or 'dense.W_y'/'dense.b_y'; values are live references"""
    params = {}
    for k, layer in enumerate(model.layers):
        for name, arr in layer.arrays().items():
            params[f"layers.{k}.{name}"] = arr
    if model.dense_head:
        params["dense.W_y"] = model.W_y
        params["dense.b_y"] = model.b_y
    return params


def _uniform(rng: np.random.Generator, limit: float, shape) -> np.ndarray:
    return rng.uniform(-limit, limit, size=shape)


def init_model(
    r: int,
    l: int,
    n_w: int,
    layer_sizes: Sequence[int],
    dense_head: bool = False,
    seed: int = 0,
    normalization: Optional[Normalization] = None,
) -> LstmModel:
    """
    Seeded initialization: gate weights uniform in +-sqrt(6/(2 n_h + n_x)), biases zero
    except the forget bias (1.0); dense head uniform in +-sqrt(6/(n_top + r)).
    """
    if not layer_sizes:
        raise ConfigError("layer_sizes must name at least one layer")
    rng = np.random.default_rng(seed)
    layers = []
    n_x = r + l
    for n_h in layer_sizes:
        limit = np.sqrt(6.0 / (2 * n_h + n_x))
        shape = (n_h, n_h + n_x)
        layers.append(LstmLayerParams(
            W_f=_uniform(rng, limit, shape),
            W_i=_uniform(rng, limit, shape),
            W_c=_uniform(rng, limit, shape),
            W_h=_uniform(rng, limit, shape),
            b_f=np.full(n_h, FORGET_BIAS),
            b_i=np.zeros(n_h),
            b_c=np.zeros(n_h),
            b_h=np.zeros(n_h),
        ))
        n_x = n_h
    W_y = b_y = None
    if dense_head:
        W_y = _uniform(rng, np.sqrt(6.0 / (n_x + r)), (r, n_x))
        b_y = np.zeros(r)
    return LstmModel(
        layers=layers,
        n_w=n_w,
        r=r,
        l=l,
        normalization=normalization or Normalization.identity(r, l),
        W_y=W_y,
        b_y=b_y,
    )


@dataclass(frozen=True)
class PackedModel:
    """Batched-evaluation view of a model; rebuild after the parameters change"""
    layers: List[PackedLayer]
    W_y: Optional[np.ndarray]
    b_y: Optional[np.ndarray]


def pack(model: LstmModel) -> PackedModel:
    return PackedModel(
        layers=[pack_layer(layer) for layer in model.layers],
        W_y=None if model.W_y is None else np.ascontiguousarray(model.W_y.T),
        b_y=model.b_y,
    )


@dataclass
class LayerCache:
    """Per-step values of one layer kept for backpropagation; step arrays are (T, B, n_h)"""
    inputs: np.ndarray
    h_prev: np.ndarray
    c_prev: np.ndarray
    f: np.ndarray
    i: np.ndarray
    g: np.ndarray
    o: np.ndarray
    tanh_c: np.ndarray


@dataclass
class ForwardCache:
    mask: np.ndarray
    layers: List[LayerCache]
    top: np.ndarray


def _check_batch(model: LstmModel, inputs: np.ndarray, mask: np.ndarray):
    if inputs.ndim != 3 or inputs.shape[2] != model.r + model.l:
        raise DimensionError(f"Batch inputs must be (B, T, {model.r + model.l}), got {inputs.shape}")
    if mask.shape != inputs.shape[:2]:
        raise DimensionError(f"Mask shape {mask.shape} does not match inputs {inputs.shape[:2]}")
    if inputs.shape[1] > model.n_w:
        raise DimensionError(f"Window of {inputs.shape[1]} steps exceeds n_w={model.n_w}")


def run_network(
    model: LstmModel,
    inputs: np.ndarray,
    mask: np.ndarray,
    packed: Optional[PackedModel] = None,
    keep_cache: bool = False,
):
    """
    Normalized network output (B, r) for normalized inputs (B, T, r+l).
    Returns (output, cache); cache is None unless keep_cache.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    _check_batch(model, inputs, mask)
    packed = packed or pack(model)
    B, T, _ = inputs.shape
    m = mask[:, :, None]
    x = np.where(m, inputs, 0.0)
    caches = []
    for layer in packed.layers:
        n_h = layer.n_h
        projected = x @ layer.Wx + layer.b
        h = np.zeros((B, n_h))
        c = np.zeros((B, n_h))
        outputs = np.empty((B, T, n_h))
        if keep_cache:
            steps = {k: np.empty((T, B, n_h)) for k in ("h_prev", "c_prev", "f", "i", "g", "o", "tanh_c")}
        for t in range(T):
            h_new, c_new, f, i, g, o, tc = gate_step(layer, projected[:, t], h, c)
            if keep_cache:
                steps["h_prev"][t] = h
                steps["c_prev"][t] = c
                steps["f"][t] = f
                steps["i"][t] = i
                steps["g"][t] = g
                steps["o"][t] = o
                steps["tanh_c"][t] = tc
            mt = m[:, t]
            h = np.where(mt, h_new, h)
            c = np.where(mt, c_new, c)
            outputs[:, t] = h
        if keep_cache:
            caches.append(LayerCache(inputs=x, **steps))
        x = outputs
    top = x[:, -1]
    y = top if packed.W_y is None else top @ packed.W_y + packed.b_y
    cache = ForwardCache(mask=mask, layers=caches, top=top) if keep_cache else None
    return y, cache


def forward_batch(model: LstmModel, inputs: np.ndarray, mask: np.ndarray,
                  packed: Optional[PackedModel] = None) -> np.ndarray:
    """Normalized outputs (B, r) for a normalized, masked batch"""
    y, _ = run_network(model, inputs, mask, packed)
    return y


def forward(
    model: LstmModel,
    window: np.ndarray,
    valid_length: Optional[int] = None,
    packed: Optional[PackedModel] = None,
) -> np.ndarray:
    """
    Predicted reduced difference (r,) for one normalized window of shape (T, r+l),
    T <= n_w, rows oldest to newest. Only the last `valid_length` rows are evaluated.
    """
    window = np.asarray(window, dtype=np.float64)
    if window.ndim != 2:
        raise DimensionError(f"Window must be (T, r+l), got shape {window.shape}")
    T = window.shape[0]
    w = T if valid_length is None else int(valid_length)
    if w < 1:
        raise ConfigError(f"valid_length must be >= 1, got {w}")
    if w > T:
        raise DimensionError(f"valid_length {w} exceeds the {T} window rows")
    mask = np.zeros((1, T), dtype=bool)
    mask[0, T - w:] = True
    y = forward_batch(model, window[None], mask, packed)[0]
    return model.normalization.invert_targets(y)


def predict(model: LstmModel, window: np.ndarray, packed: Optional[PackedModel] = None) -> np.ndarray:
    """Predicted reduced difference for a raw (unnormalized) window of [zbar; mu] rows"""
    window = np.asarray(window, dtype=np.float64)
    return forward(model, model.normalization.apply_inputs(window), packed=packed)
