"""
Surrogate bundle: reduced basis plus a one-step predictor of reduced differences.

Predictors receive raw (unnormalized) windows of [zbar; mu] rows, oldest first, and the
0-based index of the current step. The LSTM predictor ignores the index; test stubs use it.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Tuple, Union

import numpy as np

from reducedsim.errors import ConfigError, DimensionError
from reducedsim.external.codec import decode_basis, decode_model, encode_basis, encode_model
from reducedsim.lstm.network import LstmModel, pack, predict
from reducedsim.reduction.pod import ReducedBasis
from reducedsim.serving.store import ArtifactStore

BASIS_FILE = "basis.bin"
MODEL_FILE = "model.bin"


class Predictor(ABC):
    """One-step regressor of reduced-state differences"""

    r: int
    l: int
    n_w: int

    @abstractmethod
    def predict(self, window: np.ndarray, step: int) -> np.ndarray:
        """Reduced difference (r,) for a raw window (w, r+l) ending at `step`"""
        pass


class LstmPredictor(Predictor):
    def __init__(self, model: LstmModel):
        self.model = model
        self.r = model.r
        self.l = model.l
        self.n_w = model.n_w
        self._packed = pack(model)

    def predict(self, window: np.ndarray, step: int) -> np.ndarray:
        return predict(self.model, window, packed=self._packed)


class ZeroPredictor(Predictor):
    """Always predicts no change"""

    def __init__(self, r: int, l: int, n_w: int):
        self.r, self.l, self.n_w = r, l, n_w

    def predict(self, window: np.ndarray, step: int) -> np.ndarray:
        return np.zeros(self.r)


class ReplayPredictor(Predictor):
    """Returns the true reduced differences of one known trajectory (eta, r)"""

    def __init__(self, reduced: np.ndarray, l: int, n_w: int):
        self.reduced = np.asarray(reduced, dtype=np.float64)
        self.r = self.reduced.shape[1]
        self.l = l
        self.n_w = n_w

    def predict(self, window: np.ndarray, step: int) -> np.ndarray:
        return self.reduced[step + 1] - self.reduced[step]


class RecordingPredictor(Predictor):
    """Wraps another predictor and keeps every (step, window) it is asked about"""

    def __init__(self, inner: Predictor):
        self.inner = inner
        self.r, self.l, self.n_w = inner.r, inner.l, inner.n_w
        self.calls: List[Tuple[int, np.ndarray]] = []

    def predict(self, window: np.ndarray, step: int) -> np.ndarray:
        self.calls.append((step, np.array(window, copy=True)))
        return self.inner.predict(window, step)


@dataclass
class SurrogateBundle:
    basis: ReducedBasis = field(repr=False)
    model: Union[LstmModel, Predictor] = field(repr=False)

    def __post_init__(self):
        self.predictor = LstmPredictor(self.model) if isinstance(self.model, LstmModel) else self.model
        if self.basis.r != self.predictor.r:
            raise DimensionError(f"Basis has r={self.basis.r} but the predictor outputs {self.predictor.r} values")
        if self.predictor.n_w < 1:
            raise ConfigError(f"Predictor window length must be >= 1, got {self.predictor.n_w}")

    @property
    def r(self) -> int:
        return self.basis.r

    @property
    def l(self) -> int:
        return self.predictor.l

    @property
    def n_w(self) -> int:
        return self.predictor.n_w

    @property
    def n_state(self) -> int:
        return self.basis.n_state

    @property
    def normalization(self):
        return self.model.normalization if isinstance(self.model, LstmModel) else None


def save_bundle(bundle: SurrogateBundle, store: ArtifactStore) -> None:
    if not isinstance(bundle.model, LstmModel):
        raise ConfigError("Only bundles with an LSTM model can be persisted")
    store.put_bytes(BASIS_FILE, encode_basis(bundle.basis))
    store.put_bytes(MODEL_FILE, encode_model(bundle.model))


def load_bundle(store: ArtifactStore) -> SurrogateBundle:
    return SurrogateBundle(
        basis=decode_basis(store.get_bytes(BASIS_FILE)),
        model=decode_model(store.get_bytes(MODEL_FILE)),
    )
