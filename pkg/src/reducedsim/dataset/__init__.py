"""Windowed dataset construction, splitting and normalization."""
from reducedsim.dataset.normalization import Normalization, fit_normalization
from reducedsim.dataset.split import split_simulations
from reducedsim.dataset.windows import Batch, WindowSample, WindowedDataset, build_windows, make_batch

__all__ = [
    "Normalization",
    "fit_normalization",
    "split_simulations",
    "Batch",
    "WindowSample",
    "WindowedDataset",
    "build_windows",
    "make_batch",
]
