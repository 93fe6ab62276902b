"""Partition report for one scenario and time instant."""

from dataclasses import dataclass

import numpy as np
from rich.table import Table

from src.core.config import Scenario
from src.geometry.base import Side
from src.geometry.kinematics import distance, terminal_position
from src.partition.fraunhofer import aperture_terms, fraunhofer_distance, partition_grid


@dataclass(frozen=True)
class PartitionReport:
    """Fraunhofer distance, aperture terms and the resulting sub-array grid."""

    t: float
    fraunhofer_distance: float
    uav_distance: float
    vehicle_distance: float
    g1: float
    g2: float
    max_side: int
    subarrays_x: int
    subarrays_z: int
    sizes_x: tuple[int, ...]
    sizes_z: tuple[int, ...]
    forced: bool

    @property
    def subarray_count(self) -> int:
        return self.subarrays_x * self.subarrays_z

    @property
    def far_field(self) -> bool:
        return self.subarray_count == 1


def partition_report(scenario: Scenario, t: float) -> PartitionReport:
    """Collect the partition diagnostics at time t."""
    center = np.asarray(scenario.ris.center, dtype=float)
    g1, g2 = aperture_terms(scenario, t)
    partition = partition_grid(scenario, t)
    return PartitionReport(
        t=t,
        fraunhofer_distance=fraunhofer_distance(scenario.ris_spec, scenario.wavelength),
        uav_distance=float(distance(terminal_position(Side.UAV, scenario, t), center)),
        vehicle_distance=float(distance(terminal_position(Side.VEHICLE, scenario, t), center)),
        g1=g1,
        g2=g2,
        max_side=partition.max_side,
        subarrays_x=partition.subarrays_x,
        subarrays_z=partition.subarrays_z,
        sizes_x=partition.sizes_x,
        sizes_z=partition.sizes_z,
        forced=scenario.partition.forced_side is not None,
    )


def _sizes(sizes: tuple[int, ...]) -> str:
    if len(sizes) > 6:
        return f"{sizes[0]} x {len(sizes) - 1} + {sizes[-1]}"
    return ", ".join(str(s) for s in sizes)


def render_report(report: PartitionReport) -> Table:
    """Render a report as a rich table."""
    table = Table(title=f"Sub-array partition at t = {report.t:g} s")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")

    table.add_row("Fraunhofer distance", f"{report.fraunhofer_distance:.4f} m")
    table.add_row("UAV to RIS", f"{report.uav_distance:.4f} m")
    table.add_row("Vehicle to RIS", f"{report.vehicle_distance:.4f} m")
    table.add_row("g1", f"{report.g1:.4f}")
    table.add_row("g2", f"{report.g2:.4f}")
    side = f"{report.max_side} (forced)" if report.forced else str(report.max_side)
    table.add_row("Max sub-array side", side)
    table.add_row("Sub-array grid", f"{report.subarrays_x} x {report.subarrays_z}")
    table.add_row("Horizontal sizes", _sizes(report.sizes_x))
    table.add_row("Vertical sizes", _sizes(report.sizes_z))
    table.add_row("Regime", "far field (single sub-array)" if report.far_field else "near field")
    return table
