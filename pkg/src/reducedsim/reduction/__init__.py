"""Snapshot-based model reduction."""
from reducedsim.reduction.pod import (
    ReducedBasis,
    SnapshotMatrix,
    assemble_snapshots,
    compute_pod,
    projection_error,
    reconstruct,
    reduce,
)

__all__ = [
    "ReducedBasis",
    "SnapshotMatrix",
    "assemble_snapshots",
    "compute_pod",
    "projection_error",
    "reconstruct",
    "reduce",
]
