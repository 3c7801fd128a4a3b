"""
Mini-batch training loop with validation-based weight selection.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from reducedsim.core.types import NetworkConfig, TrainConfig
from reducedsim.dataset.normalization import fit_normalization
from reducedsim.dataset.windows import WindowedDataset
from reducedsim.errors import ConfigError, DimensionError, TrainingDivergenceError
from reducedsim.lstm.backward import backward, evaluate_loss
from reducedsim.lstm.network import LstmModel, init_model, parameters
from reducedsim.lstm.optimizer import RmspropState, clip_by_global_norm, rmsprop_step

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float


@dataclass
class TrainingResult:
    """Best-validation model plus the full per-epoch history"""
    model: LstmModel
    history: List[EpochRecord] = field(default_factory=list)
    best_epoch: int = 0
    best_val_loss: float = float("inf")


def _check_compatible(train_set: WindowedDataset, val_set: WindowedDataset):
    if len(train_set) == 0:
        raise ConfigError("Training set is empty")
    if len(val_set) == 0:
        raise ConfigError("Validation set is empty")
    if (train_set.r, train_set.l, train_set.n_w) != (val_set.r, val_set.l, val_set.n_w):
        raise DimensionError(
            f"Training set (r={train_set.r}, l={train_set.l}, n_w={train_set.n_w}) and validation set "
            f"(r={val_set.r}, l={val_set.l}, n_w={val_set.n_w}) differ"
        )


def train(
    train_set: WindowedDataset,
    val_set: WindowedDataset,
    network: NetworkConfig,
    config: TrainConfig,
    model: Optional[LstmModel] = None,
) -> TrainingResult:
    """
    Train with RMSprop on shuffled mini-batches and keep the parameters with the lowest
    validation loss. Normalization comes from the training set (fitted when absent).
    """
    _check_compatible(train_set, val_set)
    normalization = train_set.normalization or fit_normalization(train_set)
    if model is None:
        model = init_model(
            r=train_set.r,
            l=train_set.l,
            n_w=train_set.n_w,
            layer_sizes=network.layers,
            dense_head=network.dense_head,
            seed=config.seed,
            normalization=normalization,
        )
    else:
        model = model.with_normalization(normalization)
    if (model.r, model.l, model.n_w) != (train_set.r, train_set.l, train_set.n_w):
        raise DimensionError(
            f"Model (r={model.r}, l={model.l}, n_w={model.n_w}) does not fit the dataset "
            f"(r={train_set.r}, l={train_set.l}, n_w={train_set.n_w})"
        )

    params = parameters(model)
    state = RmspropState.create(params, config.learning_rate, config.rho, config.epsilon)
    rng = np.random.default_rng(config.shuffle_seed)
    result = TrainingResult(model=model.copy())

    logger.info(
        f"[TRAIN] layers={model.layer_sizes} dense_head={model.dense_head} "
        f"train_samples={len(train_set)} val_samples={len(val_set)} epochs={config.epochs}"
    )
    for epoch in range(1, config.epochs + 1):
        total = 0.0
        for batch_no, batch in enumerate(train_set.iter_batches(config.batch_size, rng), start=1):
            try:
                grads, loss = backward(model, batch)
            except TrainingDivergenceError as exc:
                raise TrainingDivergenceError(epoch=epoch, batch=batch_no, origin=exc.origin) from exc
            grads = clip_by_global_norm(grads, config.clip_norm)
            rmsprop_step(params, grads, state)
            total += loss * len(batch)

        train_loss = total / len(train_set)
        val_loss = evaluate_loss(model, val_set)
        if not np.isfinite(val_loss):
            raise TrainingDivergenceError(epoch=epoch)
        result.history.append(EpochRecord(epoch=epoch, train_loss=train_loss, val_loss=val_loss))
        if val_loss < result.best_val_loss:
            result.best_val_loss = val_loss
            result.best_epoch = epoch
            result.model = model.copy()
        logger.info(f"[TRAIN] epoch {epoch}/{config.epochs} train={train_loss:.6e} val={val_loss:.6e}")

    logger.info(f"[TRAIN] selected epoch {result.best_epoch} val={result.best_val_loss:.6e}")
    return result
