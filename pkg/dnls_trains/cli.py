"""Command line interface of dnls-trains."""
import logging
import sys
from pathlib import Path
from typing import Sequence

import click

from dnls_trains.config import parse_config
from dnls_trains.errors import DnlsTrainsError
from dnls_trains.harness import (COMMANDS, EXIT_SUCCESS, exit_code,
                                 run_command, sweep)

LOG_FORMAT = "%(process)s %(asctime)s %(levelname)s %(message)s"


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT
    )


def _run(command: str, config: Path, out: Path,
         overrides: Sequence[str]) -> None:
    try:
        parsed = parse_config(config, overrides)
        paths = run_command(command, parsed, out)
    except (DnlsTrainsError, ValueError) as error:
        click.echo(f"Error: {error}", err=True)
        sys.exit(exit_code(error))
    for path in paths:
        click.echo(str(path))


_config_option = click.option(
    "--config", "config", required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Experiment configuration XML file."
)
_out_option = click.option(
    "--out", "out", required=True,
    type=click.Path(file_okay=False, path_type=Path),
    help="Output directory, created when missing."
)
_override_option = click.option(
    "--override", "overrides", multiple=True, metavar="KEY=VALUE",
    help="Set a configuration attribute, e.g. grid.N=4096. Repeatable."
)


@click.group()
@click.option("--verbose", is_flag=True, help="Log per-step diagnostics.")
def main(verbose: bool):
    """Multi-soliton and kink-soliton train experiments for dnls1/dnls2."""
    _configure_logging(verbose)


@main.command()
@_config_option
@_out_option
@_override_option
def profile(config, out, overrides):
    """Sample the member profiles and the train sum."""
    _run("profile", config, out, overrides)


@main.command()
@_config_option
@_out_option
@_override_option
def residual(config, out, overrides):
    """Measure the decay of the train residual."""
    _run("residual", config, out, overrides)


@main.command()
@_config_option
@_out_option
@_override_option
def evolve(config, out, overrides):
    """Evolve the train and record its drift from the profile."""
    _run("evolve", config, out, overrides)


@main.command()
@_config_option
@_out_option
@_override_option
def fixpoint(config, out, overrides):
    """Construct the train by Picard iteration."""
    _run("fixpoint", config, out, overrides)


@main.command("sweep")
@click.option(
    "--command", "command", required=True, type=click.Choice(COMMANDS),
    help="Experiment to run on every configuration."
)
@click.option(
    "--config", "configs", required=True, multiple=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Configuration file. Repeatable."
)
@_out_option
@_override_option
@click.option("--workers", type=int, default=None,
              help="Number of worker processes.")
def sweep_command(command, configs, out, overrides, workers):
    """Run one experiment on several configurations in parallel."""
    try:
        results = sweep(command, configs, out, overrides, workers)
    except ValueError as error:
        click.echo(f"Error: {error}", err=True)
        sys.exit(exit_code(error))
    worst = EXIT_SUCCESS
    for source, code, message in results:
        click.echo(f"{source}\t{code}\t{message}")
        worst = max(worst, code)
    sys.exit(worst)


if __name__ == "__main__":
    main()
