"""Run-time artifact management."""
from reducedsim.serving.store import ArtifactStore, DirectoryArtifactStore, InMemoryArtifactStore

__all__ = ["ArtifactStore", "DirectoryArtifactStore", "InMemoryArtifactStore"]
