"""Seeded whole-simulation train/validation/test split."""
from typing import List, Tuple

import numpy as np

from reducedsim.core.types import SplitSpec
from reducedsim.errors import ConfigError


def split_simulations(total: int, spec: SplitSpec) -> Tuple[List[int], List[int], List[int]]:
    """Disjoint, exhaustive partition of range(total); each list sorted ascending"""
    if spec.total != total:
        raise ConfigError(
            f"Split counts {spec.train}/{spec.validation}/{spec.test} sum to {spec.total}, "
            f"but there are {total} simulations"
        )
    order = np.random.default_rng(spec.seed).permutation(total)
    train = sorted(int(i) for i in order[:spec.train])
    val = sorted(int(i) for i in order[spec.train:spec.train + spec.validation])
    test = sorted(int(i) for i in order[spec.train + spec.validation:])
    return train, val, test
