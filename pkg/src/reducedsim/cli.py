"""reducedsim CLI"""
import sys
from functools import wraps
from pathlib import Path

import click

from reducedsim.config import load_config
from reducedsim.engine.benchmark import run_benchmark
from reducedsim.engine.evaluate import run_evaluate
from reducedsim.engine.offline import generate, run_offline, simulate_all
from reducedsim.engine.online import run_online
from reducedsim.errors import ReducedSimError
from reducedsim.log import configure_logging
from reducedsim.presentations.report import BenchmarkPresentation, SummaryPresentation
from reducedsim.rollout.bundle import load_bundle
from reducedsim.serving.store import DirectoryArtifactStore


def _handle_errors(command):
    """Report reducedsim errors on stderr and exit with the error family's code"""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ReducedSimError as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(exc.exit_code)
    return wrapper


def _config(path, out=None):
    return load_config(path).with_output_dir(out)


@click.group()
def cli():
    """reducedsim - reduced-basis LSTM surrogates for dynamical systems"""
    pass


@cli.command(name="generate")
@click.option('--config', 'config_path', default=None, help='Config file path')
@click.option('--out', default=None, help='Output directory (overrides output_dir)')
@click.option('--verbose', is_flag=True, help='Show detailed logs')
@_handle_errors
def generate_cmd(config_path, out, verbose):
    """Generate the parameter set and simulate it with the full model"""
    configure_logging(verbose)
    config = _config(config_path, out)
    store = DirectoryArtifactStore(config.output_dir)
    params = generate(config)
    trajectories = simulate_all(config, params, store)
    store.write_manifest({"simulations": len(trajectories)})
    click.echo(f"Simulated {len(trajectories)} trajectories into {store.location}")


@cli.command()
@click.option('--config', 'config_path', default=None, help='Config file path')
@click.option('--out', default=None, help='Output directory (overrides output_dir)')
@click.option('--verbose', is_flag=True, help='Show detailed logs')
@_handle_errors
def offline(config_path, out, verbose):
    """Simulate, reduce, build the dataset and train the surrogate"""
    configure_logging(verbose)
    config = _config(config_path, out)
    result = run_offline(config)
    click.echo(f"Surrogate written to {result.output_dir}")
    click.echo(f"Selected epoch {result.training.best_epoch}, validation loss {result.training.best_val_loss:.6e}")


@cli.command()
@click.option('--bundle', required=True, help='Directory written by the offline command')
@click.option('--config', 'config_path', default=None, help='Config file path')
@click.option('--sim-id', type=int, default=None, help='Stored simulation to replay and score')
@click.option('--trajectory', default=None, type=click.Path(), help='Trajectory file to replay and score instead of a stored simulation')
@click.option('--out', default=None, help='Output directory (default: <bundle>/online)')
@click.option('--verbose', is_flag=True, help='Show detailed logs')
@_handle_errors
def online(bundle, config_path, sim_id, trajectory, out, verbose):
    """Roll the surrogate out for one parameter trajectory"""
    configure_logging(verbose)
    config = _config(config_path)
    bundle_store = DirectoryArtifactStore(bundle, create=False)
    out_store = DirectoryArtifactStore(out or Path(bundle) / "online")
    result = run_online(bundle_store, config, sim_id=sim_id, out_store=out_store, trajectory=trajectory)
    click.echo(f"Predicted {result.prediction.grid.eta} steps into {out_store.location}")
    for name, value in result.scores.items():
        click.echo(f"  {name}: {value:.4f}")


@cli.command()
@click.option('--bundle', required=True, help='Directory written by the offline command')
@click.option('--config', 'config_path', default=None, help='Config file path')
@click.option('--sim-id', type=int, multiple=True, help='Evaluate these simulations instead of the test split')
@click.option('--repetitions', type=int, default=1, show_default=True, help='Timing repetitions per rollout')
@click.option('--out', default=None, help='Output directory (default: <bundle>/evaluation)')
@click.option('--verbose', is_flag=True, help='Show detailed logs')
@_handle_errors
def evaluate(bundle, config_path, sim_id, repetitions, out, verbose):
    """Score the surrogate on the test simulations"""
    configure_logging(verbose)
    config = _config(config_path)
    bundle_store = DirectoryArtifactStore(bundle, create=False)
    out_store = DirectoryArtifactStore(out or Path(bundle) / "evaluation")
    result = run_evaluate(
        bundle_store, config, out_store=out_store, sim_ids=list(sim_id) or None, repetitions=repetitions
    )
    click.echo(SummaryPresentation(result.summary).render_text())


@cli.command()
@click.option('--config', 'config_path', default=None, help='Config file path')
@click.option('--bundle', default=None, help='Directory written by the offline command')
@click.option('--repetitions', type=int, default=None, help='Timing repetitions (default from config)')
@click.option('--out', default=None, help='Output directory (overrides output_dir)')
@click.option('--verbose', is_flag=True, help='Show detailed logs')
@_handle_errors
def benchmark(config_path, bundle, repetitions, out, verbose):
    """Compare real-time ratios of the full model and the surrogate across N"""
    configure_logging(verbose)
    config = _config(config_path, out)
    surrogate = load_bundle(DirectoryArtifactStore(bundle, create=False)) if bundle else None
    store = DirectoryArtifactStore(Path(config.output_dir) / "benchmark")
    result = run_benchmark(config, store, bundle=surrogate, repetitions=repetitions)
    click.echo(BenchmarkPresentation(result).render_text())


if __name__ == '__main__':
    cli()
