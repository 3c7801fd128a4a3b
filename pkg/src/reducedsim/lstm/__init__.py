"""From-scratch LSTM regressor: cell, stacked network, gradients, optimizer, training."""
from reducedsim.lstm.backward import backward, evaluate_loss, loss_se
from reducedsim.lstm.cell import CellState, LstmLayerParams, cell_forward
from reducedsim.lstm.network import LstmModel, forward, forward_batch, init_model, pack, parameters, predict
from reducedsim.lstm.optimizer import RmspropState, clip_by_global_norm, rmsprop_step
from reducedsim.lstm.training import EpochRecord, TrainingResult, train

__all__ = [
    "backward",
    "evaluate_loss",
    "loss_se",
    "CellState",
    "LstmLayerParams",
    "cell_forward",
    "LstmModel",
    "forward",
    "forward_batch",
    "init_model",
    "pack",
    "parameters",
    "predict",
    "RmspropState",
    "clip_by_global_norm",
    "rmsprop_step",
    "EpochRecord",
    "TrainingResult",
    "train",
]
