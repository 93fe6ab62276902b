"""Figure presets: fixed scenarios and sweeps, one result table per curve."""

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from rich.progress import track

from src.channel.base import ChannelModel
from src.channel.generator import ChannelGenerator
from src.channel.ris import ris_peak_beam
from src.core.config import Scenario
from src.core.errors import ConfigError
from src.core.logger import console, get_logger
from src.geometry.base import Side
from src.partition.fraunhofer import partition_grid
from src.publishers.base import PublishResult, ResultTable
from src.publishers.csv_publisher import CsvPublisher
from src.stats.base import CorrelationSeries
from src.stats.capacity import db_for_plot, mean_capacity_curve, modeling_error_report
from src.stats.correlation import (
    frequency_cf_from_transfer_series,
    frequency_cf_series,
    spatial_ccf,
    temporal_acf,
)

logger = get_logger(__name__)

PRESET_SEED = 2024

FIG3_TIMES = [0.5 * i for i in range(17)]
FIG4_SIDES = (5, 10, 20, 30, 40, 50, 60)
FIG4_TIMES = (1.0, 4.0)
FIG5_INDICES = list(range(1, 21))
DT_GRID = [0.001 * i for i in range(21)]
DF_GRID = [0.5e6 * i for i in range(41)]
SNR_GRID = [-10.0 + 5.0 * i for i in range(9)]
FIG11_SIDES = (1, 30, 50, 100)


@dataclass(frozen=True)
class Curve:
    """One output table of a preset, computed on demand."""

    name: str
    build: Callable[[], ResultTable]


def base_scenario(**overrides) -> Scenario:
    """Default scenario with the preset seed and the given overrides."""
    return Scenario().with_overrides(simulation__seed=PRESET_SEED, **overrides)


def _correlation_table(name: str, series: CorrelationSeries, prefix: str) -> ResultTable:
    table = ResultTable(
        name=name,
        columns=[series.axis_label, f"{prefix}_re", f"{prefix}_im", f"{prefix}_abs", "se"],
    )
    errors = series.standard_error if series.standard_error is not None else [np.nan] * len(series)
    for x, value, se in zip(series.axis, series.values, errors):
        axis_value = int(x) if series.axis_label in ("p", "q") else float(x)
        table.add(axis_value, float(value.real), float(value.imag), float(abs(value)), float(se))
    return table


def fig3(draws: Optional[int]) -> Iterator[Curve]:
    """Number of sub-arrays over motion time."""
    scenario = base_scenario(uav__antennas=6, vehicle__antennas=8)

    def build() -> ResultTable:
        table = ResultTable(name="fig3_subarray_count", columns=["t", "subarray_count"])
        for t in FIG3_TIMES:
            table.add(t, partition_grid(scenario, t).subarray_count)
        return table

    yield Curve("fig3_subarray_count", build)


def fig4_scenario(side: int) -> Scenario:
    """Modeling-error scenario for a square RIS of the given side."""
    return base_scenario(
        uav__antennas=6,
        vehicle__antennas=8,
        ris__center=(50.0, 30.0, 20.0),
        ris__spacing_wavelengths=0.25,
        ris__elements_x=side,
        ris__elements_z=side,
    )


def fig4(draws: Optional[int]) -> Iterator[Curve]:
    """Modeling error of the sub-array and planar models over RIS size."""
    for t in FIG4_TIMES:
        for model in (ChannelModel.SUBARRAY, ChannelModel.PLANAR):
            name = f"fig4_{model.value}_t{t:g}"

            def build(name: str = name, model: ChannelModel = model, t: float = t) -> ResultTable:
                table = ResultTable(
                    name=name, columns=["ris_side", "max_side", "error_db", "plot_db"]
                )
                for side in FIG4_SIDES:
                    report = modeling_error_report(fig4_scenario(side), model, t)
                    table.add(side, report.max_side, report.error_db, db_for_plot(report.error_db))
                return table

            yield Curve(name, build)


def fig5(draws: Optional[int]) -> Iterator[Curve]:
    """Spatial cross-correlation over the vehicle antenna (or beam) index."""
    for link, k in (("ris", 1.0), ("nlos", 0.0)):
        scenario = base_scenario(vehicle__antennas=100, simulation__t=4.0, channel__rician_k=k)
        for model in (ChannelModel.SUBARRAY, ChannelModel.BEAM):
            name = f"fig5_{model.value}_{link}"

            def build(
                name: str = name, scenario: Scenario = scenario, model: ChannelModel = model
            ) -> ResultTable:
                series = spatial_ccf(
                    scenario, model, (1, 1), 4.0, Side.VEHICLE, FIG5_INDICES, draws
                )
                return _correlation_table(name, series, "ccf")

            yield Curve(name, build)


def acf_pair(scenario: Scenario, model: ChannelModel) -> tuple[int, int]:
    """Pair an ACF curve is evaluated at: the RIS beam pair in the beam domain."""
    if model.in_beam_domain:
        return ris_peak_beam(scenario, scenario.simulation.t)
    return scenario.simulation.pair


def _acf_curve(
    name: str, scenario: Scenario, model: ChannelModel, draws: Optional[int]
) -> Curve:
    def build() -> ResultTable:
        pair = acf_pair(scenario, model)
        series = temporal_acf(scenario, model, pair, scenario.simulation.t, DT_GRID, draws)
        return _correlation_table(name, series, "acf")

    return Curve(name, build)


def fig6(draws: Optional[int]) -> Iterator[Curve]:
    """Temporal ACF of geometry and beam models, with and without RIS."""
    for link, k in (("ris", 1.0), ("nlos", 0.0)):
        scenario = base_scenario(channel__rician_k=k)
        for model in (ChannelModel.SUBARRAY, ChannelModel.BEAM):
            yield _acf_curve(f"fig6_{model.value}_{link}", scenario, model, draws)


def fig7(draws: Optional[int]) -> Iterator[Curve]:
    """Temporal ACF over Rician factors."""
    for k in (0.01, 1.0, 10.0):
        scenario = base_scenario(channel__rician_k=k)
        yield _acf_curve(f"fig7_k{k:g}", scenario, ChannelModel.BEAM, draws)


def fig8(draws: Optional[int]) -> Iterator[Curve]:
    """Temporal ACF over RIS dimensions at t = 4 s."""
    for side in (30, 50, 100):
        scenario = base_scenario(
            ris__elements_x=side, ris__elements_z=side, simulation__t=4.0
        )
        yield _acf_curve(f"fig8_ris{side}", scenario, ChannelModel.BEAM, draws)


def fig9(draws: Optional[int]) -> Iterator[Curve]:
    """Frequency correlation over Rician factors, geometry and beam models."""
    for k in (0.1, 1.0, 10.0):
        scenario = base_scenario(channel__rician_k=k)
        for model in (ChannelModel.SUBARRAY, ChannelModel.BEAM):
            name = f"fig9_{model.value}_k{k:g}"

            def build(
                name: str = name, scenario: Scenario = scenario, model: ChannelModel = model
            ) -> ResultTable:
                sim = scenario.simulation
                series = frequency_cf_from_transfer_series(
                    scenario, model, sim.pair, sim.t, scenario.carrier_frequency, DF_GRID, draws
                )
                return _correlation_table(name, series, "fcf")

            yield Curve(name, build)


def fig10(draws: Optional[int]) -> Iterator[Curve]:
    """Frequency correlation over UAV heights."""
    for height in (50.0, 200.0, 500.0, 1000.0):
        scenario = base_scenario(uav__height=height)
        name = f"fig10_h{height:g}"

        def build(name: str = name, scenario: Scenario = scenario) -> ResultTable:
            sim = scenario.simulation
            series = frequency_cf_series(scenario, sim.pair, sim.t, DF_GRID, draws)
            return _correlation_table(name, series, "fcf")

        yield Curve(name, build)


def fig11(draws: Optional[int]) -> Iterator[Curve]:
    """Capacity over SNR for several RIS dimensions, geometry and beam models."""
    for side in FIG11_SIDES:
        scenario = base_scenario(ris__elements_x=side, ris__elements_z=side)
        for model in (ChannelModel.SUBARRAY, ChannelModel.BEAM):
            yield _capacity_curve(f"fig11_{model.value}_ris{side}", scenario, model, draws)


def _capacity_curve(
    name: str, scenario: Scenario, model: ChannelModel, draws: Optional[int]
) -> Curve:
    def build() -> ResultTable:
        t = scenario.simulation.t
        generator = ChannelGenerator(scenario)
        series = mean_capacity_curve(scenario, model, t, SNR_GRID, draws, generator)
        table = ResultTable(name=name, columns=["snr_db", "capacity", "se"])
        errors = series.standard_error if series.standard_error is not None else []
        for snr, value, se in zip(series.axis, series.values, errors):
            table.add(float(snr), float(value), float(se))
        return table

    return Curve(name, build)


PRESETS: dict[str, Callable[[Optional[int]], Iterator[Curve]]] = {
    "fig3": fig3,
    "fig4": fig4,
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
    "fig8": fig8,
    "fig9": fig9,
    "fig10": fig10,
    "fig11": fig11,
}


def preset_tables(
    name: str, draws: Optional[int] = None, show_progress: bool = False
) -> list[ResultTable]:
    """
    Compute every curve of a preset.

    Args:
        name: Preset name
        draws: Monte Carlo draws (default: scenario default)
        show_progress: Show a progress bar over curves

    Returns:
        Result tables in curve order
    """
    if name not in PRESETS:
        valid = ", ".join(PRESETS)
        raise ConfigError(f"unknown preset '{name}', valid presets: {valid}")

    curves = list(PRESETS[name](draws))
    iterator = curves
    if show_progress:
        iterator = track(curves, description=f"Running {name}...", console=console)
    tables = []
    for curve in iterator:
        logger.info("Computing curve", preset=name, curve=curve.name)
        tables.append(curve.build())
    return tables


def run_preset(
    name: str, out_dir: Path, draws: Optional[int] = None, show_progress: bool = False
) -> list[PublishResult]:
    """
    Run a preset and write one CSV per curve into out_dir.

    Returns:
        Publish results in curve order
    """
    publisher = CsvPublisher(out_dir)
    if not publisher.check_destination():
        raise ConfigError(f"output directory {out_dir} is not writable")

    results = []
    for table in preset_tables(name, draws, show_progress):
        result = publisher.publish(table)
        if not result.success:
            raise ConfigError(result.error or f"cannot write {table.name}")
        results.append(result)
    return results

