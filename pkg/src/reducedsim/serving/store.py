"""
Artifact store - single writer for everything a pipeline run persists.

Contract based interface for artifact operations.

Usage:
    store = DirectoryArtifactStore("runs/desk")

    store.put_bytes("basis.bin", encode_basis(basis))
    store.put_text("history.csv", frame.to_csv(index=False))
    store.record_timing("offline.train", 12.5)
    store.write_manifest({"split": {...}})

    basis = decode_basis(store.get_bytes("basis.bin"))
"""
import hashlib
import json
import logging
import os
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional

from reducedsim.errors import ConfigError, FormatError

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
TIMINGS = "timings.json"
FAILED = "FAILED"

# bookkeeping files never listed in the manifest
RESERVED = {MANIFEST, TIMINGS, FAILED}


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class ArtifactStore(ABC):
    """Base class defining the artifact storage contract."""

    def __init__(self):
        self._checksums: Dict[str, str] = {}
        self._timings: Dict[str, float] = {}

    @abstractmethod
    def _write(self, name: str, data: bytes) -> None:
        """Persist raw bytes under name, replacing any previous content."""
        pass

    @abstractmethod
    def _read(self, name: str) -> bytes:
        """Raw bytes stored under name; ConfigError when missing."""
        pass

    @abstractmethod
    def exists(self, name: str) -> bool:
        pass

    @abstractmethod
    def _remove(self, name: str) -> None:
        pass

    @property
    @abstractmethod
    def location(self) -> str:
        """Human-readable location used in log and error messages."""
        pass

    def put_bytes(self, name: str, data: bytes) -> str:
        """Store an artifact and return its sha256 checksum"""
        if name in RESERVED:
            raise ConfigError(f"Artifact name '{name}' is reserved")
        self._write(name, data)
        digest = sha256(data)
        self._checksums[name] = digest
        logger.debug(f"[STORE] wrote {name} ({len(data)} bytes) to {self.location}")
        return digest

    def put_text(self, name: str, text: str) -> str:
        return self.put_bytes(name, text.encode("utf-8"))

    def get_bytes(self, name: str) -> bytes:
        return self._read(name)

    def get_text(self, name: str) -> str:
        return self._read(name).decode("utf-8")

    def checksum(self, name: str) -> str:
        return sha256(self._read(name))

    @property
    def artifacts(self) -> List[str]:
        """Names written through this store, sorted"""
        return sorted(self._checksums)

    def record_timing(self, key: str, seconds: float) -> None:
        self._timings[key] = float(seconds)
        self._write(TIMINGS, json.dumps(self._timings, indent=2, sort_keys=True).encode("utf-8"))

    def write_manifest(self, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        manifest.json: every artifact written by this store with its checksum and size,
        plus caller metadata. Contains no timestamps.
        """
        manifest: Dict[str, Any] = {
            "artifacts": {
                name: {"sha256": digest, "bytes": len(self._read(name))}
                for name, digest in sorted(self._checksums.items())
            }
        }
        if extra:
            manifest.update(extra)
        self._write(MANIFEST, json.dumps(manifest, indent=2, sort_keys=True).encode("utf-8"))
        logger.info(f"[STORE] manifest with {len(self._checksums)} artifacts at {self.location}")
        return manifest

    def read_manifest(self) -> Dict[str, Any]:
        try:
            return json.loads(self._read(MANIFEST).decode("utf-8"))
        except json.JSONDecodeError as exc:
            raise FormatError(f"Corrupt {MANIFEST} in {self.location}: {exc}") from exc

    def mark_failed(self, stage: str, message: str) -> None:
        self._write(FAILED, f"stage: {stage}\nerror: {message}\n".encode("utf-8"))
        logger.error(f"[STORE] stage '{stage}' failed, marker written to {self.location}")

    def clear_failed(self) -> None:
        if self.exists(FAILED):
            self._remove(FAILED)


class DirectoryArtifactStore(ArtifactStore):
    """Files under one output directory; writes go through a temporary file and a rename."""

    def __init__(self, root, create: bool = True):
        super().__init__()
        self.root = Path(root)
        if not create:
            if not self.root.is_dir():
                raise ConfigError(f"Directory not found: {self.root}")
            return
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ConfigError(f"Cannot create output directory {self.root}: {exc}") from exc

    @property
    def location(self) -> str:
        return str(self.root)

    def path(self, name: str) -> Path:
        return self.root / name

    def _write(self, name: str, data: bytes) -> None:
        target = self.path(name)
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp = target.with_name(target.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, target)

    def _read(self, name: str) -> bytes:
        target = self.path(name)
        if not target.is_file():
            raise ConfigError(f"Artifact '{name}' not found in {self.root}")
        return target.read_bytes()

    def exists(self, name: str) -> bool:
        return self.path(name).is_file()

    def _remove(self, name: str) -> None:
        self.path(name).unlink(missing_ok=True)


class InMemoryArtifactStore(ArtifactStore):
    """In-memory implementation. For tests only."""

    def __init__(self):
        super().__init__()
        self._files: Dict[str, bytes] = {}

    @property
    def location(self) -> str:
        return "<memory>"

    def _write(self, name: str, data: bytes) -> None:
        self._files[name] = bytes(data)

    def _read(self, name: str) -> bytes:
        if name not in self._files:
            raise ConfigError(f"Artifact '{name}' not found in {self.location}")
        return self._files[name]

    def exists(self, name: str) -> bool:
        return name in self._files

    def _remove(self, name: str) -> None:
        self._files.pop(name, None)
