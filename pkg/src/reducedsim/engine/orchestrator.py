"""
Orchestrator: runs the named stages of one pipeline against a single artifact store.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, List

from reducedsim.errors import StageError
from reducedsim.serving.store import ArtifactStore

logger = logging.getLogger(__name__)


@dataclass
class Orchestrator:
    """
    Orchestrator times each stage, stores the timing outside the manifest and turns a
    stage failure into a StageError plus a FAILED marker. Artifacts written before the
    failure stay in place.
    """
    store: ArtifactStore
    pipeline: str
    history: List[dict] = field(default_factory=list)

    def __post_init__(self):
        self.history = []
        self.store.clear_failed()

    @property
    def tag(self) -> str:
        return f"[{self.pipeline.upper()}]"

    def run_stage(self, name: str, fn: Callable[..., Any], *args, **kwargs) -> Any:
        """Run one stage and return its result"""
        key = f"{self.pipeline}.{name}"
        logger.info(f"{self.tag} stage {name} started")
        start = time.perf_counter()
        try:
            result = fn(*args, **kwargs)
        except StageError:
            raise
        except Exception as exc:
            self.store.mark_failed(key, str(exc))
            raise StageError(key, exc) from exc
        elapsed = time.perf_counter() - start
        self.store.record_timing(key, elapsed)
        self.history.append({"stage": name, "seconds": elapsed})
        logger.info(f"{self.tag} stage {name} finished in {elapsed:.2f}s")
        return result
