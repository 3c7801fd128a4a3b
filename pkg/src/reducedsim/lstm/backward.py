"""Squared-error loss and backpropagation through time for the stacked LSTM."""
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from reducedsim.dataset.windows import Batch, WindowedDataset, WindowSample, make_batch
from reducedsim.errors import ConfigError, DimensionError, TrainingDivergenceError
from reducedsim.lstm.cell import PackedLayer, unpack_gradients
from reducedsim.lstm.network import LayerCache, LstmModel, pack, parameters, run_network


def loss_se(target: np.ndarray, pred: np.ndarray) -> float:
    """Mean over components of the squared difference"""
    target = np.asarray(target, dtype=np.float64)
    pred = np.asarray(pred, dtype=np.float64)
    if target.shape != pred.shape:
        raise DimensionError(f"Target shape {target.shape} differs from prediction shape {pred.shape}")
    return float(np.mean((target - pred) ** 2))


def _as_batch(model: LstmModel, batch: Union[Batch, Sequence[WindowSample]]) -> Batch:
    if isinstance(batch, Batch):
        out = batch
    else:
        out = make_batch(list(batch), n_w=model.n_w)
    if len(out) == 0:
        raise ConfigError("Batch must contain at least one sample")
    if out.targets is None:
        raise ConfigError("Batch has no targets")
    return out


def _layer_backward(layer: PackedLayer, cache: LayerCache, mask: np.ndarray, d_out: np.ndarray):
    """Gradients of one layer given dL/d(outputs) of shape (B, T, n_h); returns (dx, dWx, dWh, db)"""
    B, T, n_x = cache.inputs.shape
    n_h = layer.n_h
    dh = np.zeros((B, n_h))
    dc = np.zeros((B, n_h))
    da_all = np.zeros((T, B, 4 * n_h))
    for t in range(T - 1, -1, -1):
        m = mask[:, t, None]
        dh_t = dh + d_out[:, t]
        dh_eff = np.where(m, dh_t, 0.0)
        dc_eff = np.where(m, dc, 0.0)
        f, i, g, o, tc = cache.f[t], cache.i[t], cache.g[t], cache.o[t], cache.tanh_c[t]
        do = dh_eff * tc
        dct = dc_eff + dh_eff * o * (1.0 - tc * tc)
        da = np.concatenate([
            dct * cache.c_prev[t] * f * (1.0 - f),
            dct * g * i * (1.0 - i),
            dct * i * (1.0 - g * g),
            do * o * (1.0 - o),
        ], axis=1)
        da_all[t] = da
        # masked steps carry h and c through unchanged
        dh = np.where(m, da @ layer.Wh.T, dh_t)
        dc = np.where(m, dct * f, dc)

    flat_da = da_all.reshape(T * B, 4 * n_h)
    dWx = cache.inputs.transpose(1, 0, 2).reshape(T * B, n_x).T @ flat_da
    dWh = cache.h_prev.reshape(T * B, n_h).T @ flat_da
    db = flat_da.sum(axis=0)
    dx = (da_all @ layer.Wx.T).transpose(1, 0, 2)
    return dx, dWx, dWh, db


def backward(
    model: LstmModel,
    batch: Union[Batch, Sequence[WindowSample]],
) -> Tuple[Dict[str, np.ndarray], float]:
    """
    Gradients of the mean batch loss with respect to every parameter, keyed like
    `parameters(model)`, and the loss itself. Batches hold raw windows and differences;
    both are normalized with the model's statistics, so the loss lives in normalized
    target space.
    """
    b = _as_batch(model, batch)
    targets = model.normalization.apply_targets(b.targets)
    packed = pack(model)
    inputs = model.normalization.apply_inputs(b.inputs)
    y, cache = run_network(model, inputs, b.mask, packed, keep_cache=True)

    per_sample = np.mean((y - targets) ** 2, axis=1)
    bad = np.nonzero(~np.isfinite(per_sample))[0]
    if bad.size:
        origin = None
        if b.origins is not None:
            origin = (int(b.origins[bad[0], 0]), int(b.origins[bad[0], 1]))
        raise TrainingDivergenceError(origin=origin)
    loss = float(per_sample.mean())

    B = len(b)
    dy = 2.0 * (y - targets) / (model.r * B)
    grads: Dict[str, np.ndarray] = {}
    if model.dense_head:
        grads["dense.W_y"] = dy.T @ cache.top
        grads["dense.b_y"] = dy.sum(axis=0)
        dtop = dy @ model.W_y
    else:
        dtop = dy

    d_out = np.zeros((B, b.inputs.shape[1], model.layers[-1].n_h))
    d_out[:, -1] = dtop
    for k in range(len(model.layers) - 1, -1, -1):
        dx, dWx, dWh, db = _layer_backward(packed.layers[k], cache.layers[k], cache.mask, d_out)
        for name, arr in unpack_gradients(dWx, dWh, db).items():
            grads[f"layers.{k}.{name}"] = arr
        d_out = dx

    return {name: grads[name] for name in parameters(model)}, loss


def sample_losses(model: LstmModel, dataset: WindowedDataset, batch_size: int = 512) -> np.ndarray:
    """Per-sample normalized loss over a whole dataset, in sample order"""
    packed = pack(model)
    out = np.empty(len(dataset))
    start = 0
    for b in dataset.iter_batches(batch_size):
        y, _ = run_network(model, model.normalization.apply_inputs(b.inputs), b.mask, packed)
        targets = model.normalization.apply_targets(b.targets)
        out[start:start + len(b)] = np.mean((y - targets) ** 2, axis=1)
        start += len(b)
    return out


def evaluate_loss(model: LstmModel, dataset: WindowedDataset, batch_size: int = 512) -> float:
    """Mean normalized loss over a dataset; independent of batch_size up to rounding"""
    if len(dataset) == 0:
        raise ConfigError("Cannot evaluate loss on an empty dataset")
    return float(np.mean(sample_losses(model, dataset, batch_size)))
