"""Desk-scale acceptance - full offline training and evaluation on configs/desk.yaml."""
from pathlib import Path

import pytest

from reducedsim.config import load_config
from reducedsim.engine.artifacts import load_simulation
from reducedsim.engine.evaluate import run_evaluate
from reducedsim.engine.offline import run_offline
from reducedsim.metrics.scores import mean_score, score_triplet
from reducedsim.serving.store import DirectoryArtifactStore, InMemoryArtifactStore

DESK = Path(__file__).resolve().parent.parent / "configs" / "desk.yaml"


@pytest.mark.slow
def test_desk_surrogate_accuracy(tmp_path):
    config = load_config(DESK).with_output_dir(str(tmp_path))
    result = run_offline(config)
    store = DirectoryArtifactStore(tmp_path, create=False)
    evaluation = run_evaluate(store, config, out_store=InMemoryArtifactStore())

    mean_row = evaluation.summary.iloc[-1]
    assert mean_row["s_rec"] >= 0.98

    early = []
    for sim_id in result.split["test"]:
        reference, mu = load_simulation(store, sim_id)
        triplet = score_triplet(reference, result.bundle, mu)
        grid = mu.grid
        early.append(mean_score(triplet.approx, (grid.t_start, grid.t_start + 39 * grid.dt)))
    assert sum(early) / len(early) >= 0.9
