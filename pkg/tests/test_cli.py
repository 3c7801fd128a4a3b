"""Test the reducedsim CLI - commands and exit codes."""
from pathlib import Path

from click.testing import CliRunner

from reducedsim.cli import cli

SMOKE = str(Path(__file__).resolve().parent.parent / "configs" / "smoke.yaml")


def test_offline_online_evaluate(tmp_path):
    runner = CliRunner()
    out = str(tmp_path / "bundle")

    result = runner.invoke(cli, ["offline", "--config", SMOKE, "--out", out])
    assert result.exit_code == 0, result.output
    assert "Surrogate written to" in result.output

    result = runner.invoke(cli, ["online", "--bundle", out, "--config", SMOKE])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "bundle" / "online" / "predictions" / "pred_constant.bin").is_file()

    result = runner.invoke(cli, ["evaluate", "--bundle", out, "--config", SMOKE])
    assert result.exit_code == 0, result.output
    assert "mean" in result.output
    assert (tmp_path / "bundle" / "evaluation" / "summary.csv").is_file()


def test_generate(tmp_path):
    result = CliRunner().invoke(cli, ["generate", "--config", SMOKE, "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "trajectories" / "sim_0002.bin").is_file()


def test_corrupted_model_exits_with_format_code(tmp_path):
    runner = CliRunner()
    out = tmp_path / "bundle"
    assert runner.invoke(cli, ["offline", "--config", SMOKE, "--out", str(out)]).exit_code == 0
    model = out / "model.bin"
    data = bytearray(model.read_bytes())
    data[0] ^= 0xFF
    model.write_bytes(bytes(data))

    result = runner.invoke(cli, ["online", "--bundle", str(out), "--config", SMOKE])
    assert result.exit_code == 4
    assert "Error:" in result.output


def test_missing_bundle_is_a_config_error(tmp_path):
    result = CliRunner().invoke(cli, ["online", "--bundle", str(tmp_path / "nope"), "--config", SMOKE])
    assert result.exit_code == 3


def test_invalid_config_is_a_config_error(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("grid:\n  dt: -1\n")
    result = CliRunner().invoke(cli, ["offline", "--config", str(path), "--out", str(tmp_path / "o")])
    assert result.exit_code == 3


def test_online_replays_a_trajectory_file(tmp_path):
    runner = CliRunner()
    out = tmp_path / "bundle"
    assert runner.invoke(cli, ["offline", "--config", SMOKE, "--out", str(out)]).exit_code == 0
    recorded = tmp_path / "recorded.bin"
    recorded.write_bytes((out / "trajectories" / "sim_0001.bin").read_bytes())

    result = runner.invoke(cli, ["online", "--bundle", str(out), "--config", SMOKE, "--trajectory", str(recorded)])
    assert result.exit_code == 0, result.output
    assert "s_approx" in result.output
    assert (out / "online" / "predictions" / "pred_recorded.bin").is_file()
