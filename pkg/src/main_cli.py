#!/usr/bin/env python3
"""
RIS UAV Channel Simulator - Main CLI application.

Sub-array partitioned RIS channel models for UAV-to-vehicle links, with
correlation, capacity and modeling-error sweeps written as CSV.
"""

import functools
import os
import shutil
import sys
from pathlib import Path
from typing import Optional

import click
import yaml
from rich.table import Table

from src.commands.presets import PRESETS, run_preset
from src.commands.report import partition_report, render_report
from src.commands.sweep import SweepSpec, run_sweep
from src.core.config import LOG_LEVEL_ENV, Scenario
from src.core.errors import ConfigError, SimulationError
from src.core.logger import console, get_logger, setup_logging
from src.core.version import get_version
from src.publishers.base import ResultTable
from src.publishers.csv_publisher import CsvPublisher, format_value

logger = get_logger(__name__)

EXAMPLE_SCENARIO = Path(__file__).parent.parent / "config" / "scenario.example.yaml"

SUMMARY_COLUMNS = ("model", "subarray_count", "error_db", "capacity", "acf_abs", "fcf_abs")


def reports_errors(func):
    """Print simulator errors in red and exit with their exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SimulationError as e:
            console.print(f"[red]Error: {e}[/red]")
            logger.error("Command failed", error=str(e), exit_code=e.exit_code)
            sys.exit(e.exit_code)

    return wrapper


def load_scenario(ctx: click.Context, path: Optional[Path]) -> Scenario:
    """Load a scenario (defaults when no file is given) and set up logging from it."""
    scenario = Scenario.from_file(path) if path else Scenario()

    log_config = scenario.logging
    level = "DEBUG" if ctx.obj["verbose"] else os.getenv(LOG_LEVEL_ENV, log_config.level)
    setup_logging(
        level=level,
        log_file=log_config.file,
        format_type=ctx.obj["log_format"] or log_config.format,
    )
    logger.debug("Scenario loaded", path=str(path) if path else None)
    return scenario


def summary_table(table: ResultTable, limit: int = 40) -> Table:
    """Show the headline columns of a sweep table."""
    columns = [table.columns[0], *SUMMARY_COLUMNS]
    indices = [table.columns.index(c) for c in columns]

    summary = Table(title=table.name)
    for column in columns:
        summary.add_column(column, style="cyan" if column == "model" else None)
    for row in table.rows[:limit]:
        summary.add_row(*(format_value(row[i]) for i in indices))
    if len(table) > limit:
        summary.caption = f"{len(table) - limit} more rows in the CSV"
    return summary


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.option(
    "--log-format",
    type=click.Choice(["json", "plain"]),
    default=None,
    help="Log format (overrides the scenario's logging.format)",
)
@click.version_option(version=get_version(), prog_name="RIS UAV Channel Simulator")
@click.pass_context
def cli(ctx, verbose: bool, log_format: Optional[str]):
    """RIS UAV Channel Simulator - sub-array RIS channel models and statistics."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["log_format"] = log_format


@cli.command()
@click.option(
    "--scenario",
    "-s",
    "scenario_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Scenario YAML file (defaults when omitted)",
)
@click.option("--sweep", "sweep_text", required=True, help="Sweep as <var>=<start>:<stop>:<step>")
@click.option(
    "--model",
    "-m",
    "models",
    default="subarray",
    show_default=True,
    help="Comma-separated models: spherical, planar, subarray, beam",
)
@click.option("--draws", "-n", type=click.IntRange(min=1), default=None, help="Monte Carlo draws")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Random seed")
@click.option(
    "--out",
    "-o",
    "out_dir",
    type=click.Path(path_type=Path),
    default=Path("results"),
    show_default=True,
)
@click.option("--dry-run", "-d", is_flag=True, help="Compute and show rows without writing CSV")
@click.pass_context
@reports_errors
def simulate(
    ctx,
    scenario_path: Optional[Path],
    sweep_text: str,
    models: str,
    draws: Optional[int],
    seed: Optional[int],
    out_dir: Path,
    dry_run: bool,
):
    """Sweep one variable and write one row per grid point and model."""
    scenario = load_scenario(ctx, scenario_path)
    if seed is not None:
        scenario = scenario.with_overrides(simulation__seed=seed)

    spec = SweepSpec.parse(sweep_text, [m for m in models.split(",") if m.strip()], draws)
    console.print(
        f"\n[bold]Sweeping {spec.variable}[/bold] over {len(spec.grid)} points, "
        f"models: {', '.join(m.value for m in spec.models)}\n"
    )

    publisher = CsvPublisher(out_dir)
    if not dry_run and not publisher.check_destination():
        raise ConfigError(f"output directory {out_dir} is not writable")

    table = run_sweep(scenario, spec)
    result = publisher.publish(table, dry_run=dry_run)
    if not result.success:
        raise ConfigError(result.error or "cannot write results")

    console.print(summary_table(table))

    if dry_run:
        console.print(f"\n[yellow]Dry run: {len(table)} rows not written[/yellow]")
    else:
        console.print(f"\n[green]✓ {len(table)} rows written to {result.path}[/green]")


@cli.command()
@click.argument("name")
@click.option(
    "--out",
    "-o",
    "out_dir",
    type=click.Path(path_type=Path),
    default=Path("results"),
    show_default=True,
)
@click.option("--draws", "-n", type=click.IntRange(min=1), default=None, help="Monte Carlo draws")
@click.pass_context
@reports_errors
def preset(ctx, name: str, out_dir: Path, draws: Optional[int]):
    """Reproduce a figure preset (fig3 ... fig11) as CSV files."""
    load_scenario(ctx, None)
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}', valid presets: {', '.join(PRESETS)}")

    results = run_preset(name, out_dir, draws, show_progress=True)

    table = Table(title=f"Preset {name}")
    table.add_column("File", style="cyan")
    table.add_column("Rows", style="green")
    for result in results:
        table.add_row(str(result.path), str(result.rows))
    console.print(table)
    console.print(f"\n[green]✓ {len(results)} CSV files written to {out_dir}[/green]")


@cli.command("partition-report")
@click.option(
    "--scenario",
    "-s",
    "scenario_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Scenario YAML file (defaults when omitted)",
)
@click.option("--t", "t", type=float, default=None, help="Motion time in seconds")
@click.pass_context
@reports_errors
def partition_report_command(ctx, scenario_path: Optional[Path], t: Optional[float]):
    """Show Fraunhofer distance, g1, g2 and the sub-array grid."""
    scenario = load_scenario(ctx, scenario_path)
    t = scenario.simulation.t if t is None else t
    console.print(render_report(partition_report(scenario, t)))


@cli.command()
@click.option(
    "--path",
    "-p",
    type=click.Path(dir_okay=False, path_type=Path),
    default=Path("scenario.yaml"),
    show_default=True,
    help="Where to write the scenario file",
)
def init(path: Path):
    """Write an example scenario file."""
    if path.exists():
        if not click.confirm(f"Scenario file already exists at {path}. Overwrite?"):
            console.print("[yellow]Initialization cancelled[/yellow]")
            return

    path.parent.mkdir(parents=True, exist_ok=True)
    if EXAMPLE_SCENARIO.exists():
        shutil.copy(EXAMPLE_SCENARIO, path)
    else:
        with open(path, "w") as f:
            yaml.safe_dump(Scenario().model_dump(mode="json"), f, sort_keys=False)
    console.print(f"[green]✓ Scenario created at {path}[/green]")

    console.print("\n[bold]Next steps:[/bold]")
    console.print("1. Edit the scenario file")
    console.print("2. Check the partition:")
    console.print(f"   ris-sim partition-report --scenario {path}")
    console.print("3. Run a sweep:")
    console.print(f"   ris-sim simulate --scenario {path} --sweep t=0:8:0.5")


@cli.command()
def version():
    """Show version information."""
    console.print(f"[bold]RIS UAV Channel Simulator[/bold] version {get_version()}")


if __name__ == "__main__":
    cli()
