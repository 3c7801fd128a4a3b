"""Test stage orchestration - timing, failure marker and error codes."""
import pytest

from reducedsim.engine.orchestrator import Orchestrator
from reducedsim.errors import FormatError, StageError
from reducedsim.serving.store import FAILED, TIMINGS, InMemoryArtifactStore


def test_stage_result_and_timing():
    store = InMemoryArtifactStore()
    orchestrator = Orchestrator(store=store, pipeline="offline")
    assert orchestrator.run_stage("pod", lambda x: x + 1, 1) == 2
    assert "offline.pod" in store.get_text(TIMINGS)
    assert [h["stage"] for h in orchestrator.history] == ["pod"]


def test_failure_writes_marker_and_keeps_earlier_artifacts():
    store = InMemoryArtifactStore()
    orchestrator = Orchestrator(store=store, pipeline="offline")
    orchestrator.run_stage("simulate", store.put_bytes, "trajectories/sim_0000.bin", b"x")

    def broken():
        raise FormatError("bad magic")

    with pytest.raises(StageError) as excinfo:
        orchestrator.run_stage("train", broken)
    assert excinfo.value.stage == "offline.train"
    assert excinfo.value.exit_code == 4
    assert "offline.train" in store.get_text(FAILED)
    assert store.exists("trajectories/sim_0000.bin")


def test_foreign_errors_exit_with_stage_code():
    orchestrator = Orchestrator(store=InMemoryArtifactStore(), pipeline="evaluate")
    with pytest.raises(StageError) as excinfo:
        orchestrator.run_stage("boom", lambda: 1 / 0)
    assert excinfo.value.exit_code == 6


def test_new_run_clears_previous_failure():
    store = InMemoryArtifactStore()
    store.mark_failed("offline.pod", "old")
    Orchestrator(store=store, pipeline="offline")
    assert not store.exists(FAILED)
