"""Parameter sweeps producing one result row per grid point and model."""

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, Optional

from src.channel.base import ChannelModel
from src.channel.generator import ChannelGenerator
from src.core.config import Scenario
from src.core.errors import ConfigError, DomainError
from src.core.logger import get_logger
from src.publishers.base import ResultTable
from src.stats.capacity import mean_capacity, modeling_error_report
from src.stats.correlation import frequency_cf_from_transfer, spatial_temporal_correlation

logger = get_logger(__name__)

# Sweep variable -> scenario keys it overrides
SWEEP_VARIABLES: dict[str, tuple[str, ...]] = {
    "t": ("simulation__t",),
    "dt": ("simulation__dt",),
    "df": ("simulation__df",),
    "snr": ("simulation__snr_db",),
    "ris_dim": ("ris__elements_x", "ris__elements_z"),
    "K": ("channel__rician_k",),
    "H_0": ("uav__height",),
    "max_subarray_side": ("partition__forced_side",),
}

INTEGER_VARIABLES = {"ris_dim", "max_subarray_side"}

ROW_COLUMNS = [
    "model",
    "max_side",
    "subarray_count",
    "error_db",
    "capacity",
    "capacity_se",
    "acf_re",
    "acf_im",
    "acf_abs",
    "fcf_re",
    "fcf_im",
    "fcf_abs",
]


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable, its grid and the models evaluated at every point."""

    variable: str
    grid: tuple[float, ...]
    models: tuple[ChannelModel, ...] = (ChannelModel.SUBARRAY,)
    draws: Optional[int] = None

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            valid = ", ".join(SWEEP_VARIABLES)
            raise ConfigError(f"unknown sweep variable '{self.variable}', expected one of: {valid}")
        if not self.grid:
            raise ConfigError("sweep grid is empty")
        if not self.models:
            raise ConfigError("no model selected")

    @classmethod
    def parse(
        cls, text: str, models: Sequence[str] = ("subarray",), draws: Optional[int] = None
    ) -> "SweepSpec":
        """
        Parse ``<var>=<start>:<stop>:<step>``.

        Args:
            text: Sweep expression
            models: Model names
            draws: Monte Carlo draws per point

        Returns:
            Sweep specification
        """
        variable, sep, bounds = text.partition("=")
        parts = bounds.split(":")
        if not sep or len(parts) != 3:
            raise ConfigError(f"sweep must look like <var>=<start>:<stop>:<step>, got '{text}'")
        try:
            start, stop, step = (float(x) for x in parts)
        except ValueError as e:
            raise ConfigError(f"sweep bounds must be numbers, got '{bounds}'") from e
        if step <= 0 or stop < start:
            raise ConfigError(f"sweep needs start <= stop and step > 0, got '{bounds}'")

        count = round((stop - start) / step) + 1
        grid = tuple(start + i * step for i in range(count))

        variable = variable.strip()
        if variable in INTEGER_VARIABLES:
            if any(v != int(v) for v in grid):
                raise ConfigError(f"sweep variable '{variable}' takes whole numbers")
            grid = tuple(float(int(v)) for v in grid)

        try:
            parsed = tuple(ChannelModel.parse(m) for m in models)
        except DomainError as e:
            raise ConfigError(str(e)) from e
        return cls(variable=variable, grid=grid, models=parsed, draws=draws)


def apply_variable(scenario: Scenario, variable: str, value: float) -> Scenario:
    """Scenario with the swept variable set to value."""
    if variable in INTEGER_VARIABLES:
        value = int(value)
    overrides = {key: value for key in SWEEP_VARIABLES[variable]}
    return scenario.with_overrides(**overrides)


def evaluate_point(
    scenario: Scenario, model: ChannelModel, draws: Optional[int]
) -> tuple[Any, ...]:
    """
    Evaluate every row statistic at the scenario's evaluation point.

    Returns:
        Values in ``ROW_COLUMNS`` order
    """
    sim = scenario.simulation
    generator = ChannelGenerator(scenario)
    partition = generator.partition(model, sim.t)

    report = modeling_error_report(scenario, model, sim.t, generator)
    cap = mean_capacity(scenario, model, sim.t, sim.snr_db, draws, generator)
    acf = spatial_temporal_correlation(
        scenario, model, sim.pair, sim.pair, sim.t, sim.dt, draws, generator
    )
    fcf = frequency_cf_from_transfer(
        scenario, model, sim.pair, sim.t, scenario.carrier_frequency, sim.df, draws, generator
    )

    return (
        model.value,
        partition.max_side,
        partition.subarray_count,
        report.error_db,
        cap.value.real,
        cap.standard_error,
        acf.value.real,
        acf.value.imag,
        abs(acf.value),
        fcf.value.real,
        fcf.value.imag,
        abs(fcf.value),
    )


def _evaluate(
    scenario: Scenario, spec: SweepSpec, task: tuple[float, ChannelModel]
) -> tuple[Any, ...]:
    value, model = task
    point = apply_variable(scenario, spec.variable, value)
    return (value, *evaluate_point(point, model, spec.draws))


def run_sweep(scenario: Scenario, spec: SweepSpec) -> ResultTable:
    """
    Evaluate a sweep; rows follow the grid, models interleaved at each point.

    Args:
        scenario: Base scenario
        spec: Sweep specification

    Returns:
        Result table named ``sweep_<variable>``
    """
    tasks = [(value, model) for value in spec.grid for model in spec.models]
    threads = min(scenario.threads, len(tasks))
    logger.info("Sweep started", variable=spec.variable, points=len(spec.grid), threads=threads)

    if threads > 1:
        # Grid points run in parallel; statistics inside a point stay serial
        serial = scenario.with_overrides(simulation__threads=1)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(partial(_evaluate, serial, spec), tasks))
    else:
        rows = [_evaluate(scenario, spec, task) for task in tasks]

    table = ResultTable(name=f"sweep_{spec.variable}", columns=[spec.variable, *ROW_COLUMNS])
    for row in rows:
        value = row[0]
        if spec.variable in INTEGER_VARIABLES and math.isfinite(value):
            value = int(value)
        table.add(value, *row[1:])

    logger.info("Sweep finished", variable=spec.variable, rows=len(table))
    return table
