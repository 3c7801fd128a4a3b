"""RMSprop without momentum, plus global-norm gradient clipping."""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from reducedsim.errors import ConfigError, DimensionError


@dataclass
class RmspropState:
    learning_rate: float
    rho: float = 0.9
    epsilon: float = 1e-7
    accumulators: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not 0 < self.rho < 1:
            raise ConfigError(f"rho must lie in (0, 1), got {self.rho}")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")

    @classmethod
    def create(cls, params: Dict[str, np.ndarray], learning_rate: float,
               rho: float = 0.9, epsilon: float = 1e-7) -> "RmspropState":
        return cls(
            learning_rate=learning_rate,
            rho=rho,
            epsilon=epsilon,
            accumulators={name: np.zeros_like(p) for name, p in params.items()},
        )


def rmsprop_step(
    params: Dict[str, np.ndarray],
    grads: Dict[str, np.ndarray],
    state: RmspropState,
) -> Tuple[Dict[str, np.ndarray], RmspropState]:
    """
    a <- rho a + (1 - rho) g^2;  p <- p - lr g / (sqrt(a) + eps).
    Parameter and accumulator arrays are updated in place.
    """
    if params.keys() != grads.keys():
        raise DimensionError("Gradient names do not match parameter names")
    for name, p in params.items():
        g = grads[name]
        if g.shape != p.shape:
            raise DimensionError(f"Gradient {name} has shape {g.shape}, parameter has {p.shape}")
        a = state.accumulators.get(name)
        if a is None:
            a = state.accumulators[name] = np.zeros_like(p)
        a *= state.rho
        a += (1.0 - state.rho) * g * g
        p -= state.learning_rate * g / (np.sqrt(a) + state.epsilon)
    return params, state


def global_norm(grads: Dict[str, np.ndarray]) -> float:
    return float(np.sqrt(sum(float(np.sum(g * g)) for g in grads.values())))


def clip_by_global_norm(grads: Dict[str, np.ndarray], max_norm: Optional[float]) -> Dict[str, np.ndarray]:
    """Rescale all gradients together so their joint norm is at most max_norm"""
    if max_norm is None:
        return grads
    norm = global_norm(grads)
    if norm <= max_norm or norm == 0.0:
        return grads
    scale = max_norm / norm
    return {name: g * scale for name, g in grads.items()}
