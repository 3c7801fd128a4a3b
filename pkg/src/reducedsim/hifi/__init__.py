"""Synthetic full-order model and parameter-set generation."""
from reducedsim.hifi.excitation import generate_parameter_set
from reducedsim.hifi.model import (
    build_network,
    integrate,
    mechanical_energy,
    simulate,
    simulate_many,
    static_equilibrium,
)

__all__ = [
    "generate_parameter_set",
    "build_network",
    "integrate",
    "mechanical_energy",
    "simulate",
    "simulate_many",
    "static_equilibrium",
]
