"""Logging setup for the CLI."""
import logging


def configure_logging(verbose: bool = False) -> None:
    """Route reducedsim loggers to stderr; DEBUG when verbose"""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    logging.getLogger("reducedsim").setLevel(level)
