"""Exception hierarchy for reducedsim.

Every error family carries the exit code the CLI reports for it.
"""
from typing import Optional, Tuple


class ReducedSimError(Exception):
    """Base class for all reducedsim errors"""

    exit_code: int = 1


class ConfigError(ReducedSimError, ValueError):
    """Invalid configuration, descriptor or argument"""

    exit_code = 3


class DimensionError(ReducedSimError, ValueError):
    """Array shapes or sizes do not line up"""

    exit_code = 3


class FormatError(ReducedSimError):
    """Binary artifact has the wrong magic, version or size"""

    exit_code = 4


class NumericalError(ReducedSimError, ArithmeticError):
    """Non-finite values or a failed factorization"""

    exit_code = 5


class IntegrationDivergenceError(NumericalError):
    """Full-order integration produced a non-finite state"""

    def __init__(self, step: int, message: Optional[str] = None):
        self.step = step
        super().__init__(message or f"Integration diverged at output step {step}: non-finite state")


class RolloutDivergenceError(NumericalError):
    """Surrogate rollout produced a non-finite reduced state"""

    def __init__(self, step: int, message: Optional[str] = None):
        self.step = step
        super().__init__(message or f"Rollout diverged at step {step}: non-finite prediction")


class TrainingDivergenceError(NumericalError):
    """Loss became non-finite during training"""

    def __init__(
        self,
        epoch: Optional[int] = None,
        batch: Optional[int] = None,
        origin: Optional[Tuple[int, int]] = None,
    ):
        self.epoch = epoch
        self.batch = batch
        self.origin = origin
        where = []
        if epoch is not None:
            where.append(f"epoch {epoch}")
        if batch is not None:
            where.append(f"batch {batch}")
        if origin is not None:
            where.append(f"sample origin (simulation {origin[0]}, step {origin[1]})")
        location = ", ".join(where) if where else "unknown location"
        super().__init__(f"Non-finite loss at {location}")


class StageError(ReducedSimError):
    """A pipeline stage failed; wraps the original error"""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 6) if isinstance(cause, ReducedSimError) else 6
        super().__init__(f"Stage '{stage}' failed: {cause}")
