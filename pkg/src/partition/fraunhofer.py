"""Fraunhofer distance and the even sub-array tiling of the RIS."""

import math
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from src.core.config import Scenario
from src.core.errors import DomainError
from src.core.logger import get_logger
from src.geometry.base import Side
from src.geometry.kinematics import distance, terminal_position
from src.partition.base import RisSpec, SubArrayPartition

logger = get_logger(__name__)


def fraunhofer_distance(ris: RisSpec, wavelength: float) -> float:
    """
    Get the far-field boundary of the whole panel.

    Args:
        ris: Panel description
        wavelength: Carrier wavelength in meters

    Returns:
        Distance in meters
    """
    if wavelength <= 0:
        raise DomainError(f"wavelength must be positive, got {wavelength}")
    diagonal_sq = ris.element_spacing**2 * ((ris.elements_x - 1) ** 2 + (ris.elements_z - 1) ** 2)
    return 2 * diagonal_sq / wavelength


def ris_element_positions(ris: RisSpec) -> NDArray[np.float64]:
    """Element centers, shape (elements_z, elements_x, 3)."""
    across = (np.arange(1, ris.elements_x + 1) - (ris.elements_x + 1) / 2) * ris.element_spacing
    up = (np.arange(1, ris.elements_z + 1) - (ris.elements_z + 1) / 2) * ris.element_spacing

    grid = np.empty((ris.elements_z, ris.elements_x, 3))
    grid[...] = np.asarray(ris.center, dtype=float)
    grid += across[None, :, None] * ris.horizontal_axis
    grid[..., 2] += up[:, None]
    return grid


def aperture_terms(scenario: Scenario, t: float) -> tuple[float, float]:
    """
    Get the largest planar-valid sub-array sides seen from UAV and vehicle.

    Args:
        scenario: Scenario
        t: Motion time in seconds

    Returns:
        (g1, g2) before flooring and clamping
    """
    ris = scenario.ris_spec
    center = np.asarray(ris.center, dtype=float)
    wavelength = scenario.wavelength
    d_m = ris.element_spacing

    def term(side: Side) -> float:
        xi = float(distance(terminal_position(side, scenario, t), center))
        array = scenario.uav_array if side is Side.UAV else scenario.vehicle_array
        return (
            math.sqrt(wavelength * xi) / (2 * d_m)
            - array.count * array.spacing / (math.sqrt(2) * d_m)
            + 1
        )

    return term(Side.UAV), term(Side.VEHICLE)


def clamp_side(g1: float, g2: float, limit: int) -> int:
    """Floor and clamp the aperture terms to a sub-array side in 1..limit."""
    if min(g1, g2) <= 1:
        return 1
    return max(1, min(math.floor(g1), math.floor(g2), limit))


def max_subarray_side(scenario: Scenario, t: float) -> int:
    """
    Get the largest sub-array side allowed at time t.

    A configured ``partition.forced_side`` replaces the distance rule.

    Args:
        scenario: Scenario
        t: Motion time in seconds

    Returns:
        Side length in elements
    """
    limit = min(scenario.ris.elements_x, scenario.ris.elements_z)
    forced = scenario.partition.forced_side
    if forced is not None:
        return min(forced, limit)

    g1, g2 = aperture_terms(scenario, t)
    return clamp_side(g1, g2, limit)


def axis_sizes(elements: int, side: int) -> tuple[int, ...]:
    """
    Split one panel axis into sub-array sizes.

    All sub-arrays but the last hold ``side`` elements; the last holds the
    remainder.

    Args:
        elements: Elements along the axis
        side: Largest sub-array side

    Returns:
        Sizes in order along the axis
    """
    if elements < 1 or side < 1:
        raise DomainError(f"cannot split {elements} elements with side {side}")
    side = min(side, elements)
    if elements % side == 0:
        count = elements // side
    else:
        count = (elements - elements % side) // side + 1
    return (side,) * (count - 1) + (elements - side * (count - 1),)


def tile(ris: RisSpec, side: int, t: float = 0.0) -> SubArrayPartition:
    """
    Tile a panel evenly with a given largest side.

    Args:
        ris: Panel description
        side: Largest sub-array side on both axes
        t: Time the tiling belongs to

    Returns:
        Partition; each slice pair is (horizontal, vertical) into the
        element grid of ``ris_element_positions``
    """
    sizes_x = axis_sizes(ris.elements_x, side)
    sizes_z = axis_sizes(ris.elements_z, side)
    grid = ris_element_positions(ris)

    starts_x = np.concatenate([[0], np.cumsum(sizes_x)[:-1]])
    starts_z = np.concatenate([[0], np.cumsum(sizes_z)[:-1]])

    slices = []
    counts = []
    centers = []
    for x0, nx in zip(starts_x, sizes_x):
        for z0, nz in zip(starts_z, sizes_z):
            across = slice(int(x0), int(x0) + nx)
            up = slice(int(z0), int(z0) + nz)
            slices.append((across, up))
            counts.append(nx * nz)
            centers.append(grid[up, across].reshape(-1, 3).mean(axis=0))

    return SubArrayPartition(
        t=t,
        max_side=side,
        sizes_x=sizes_x,
        sizes_z=sizes_z,
        counts=np.asarray(counts, dtype=np.int64),
        centers=np.asarray(centers),
        slices=tuple(slices),
    )


def partition_grid(scenario: Scenario, t: float, side: Optional[int] = None) -> SubArrayPartition:
    """
    Get the sub-array partition at time t.

    Args:
        scenario: Scenario
        t: Motion time in seconds
        side: Largest side to use instead of ``max_subarray_side``

    Returns:
        Partition
    """
    if side is None:
        side = max_subarray_side(scenario, t)
    partition = tile(scenario.ris_spec, side, t)
    logger.debug(
        "Partition computed",
        t=t,
        side=side,
        grid=f"{partition.subarrays_x}x{partition.subarrays_z}",
    )
    return partition


def whole_panel(scenario: Scenario, t: float) -> SubArrayPartition:
    """The whole panel as one sub-array (planar-wave baseline)."""
    ris = scenario.ris_spec
    return tile(ris, max(ris.elements_x, ris.elements_z), t)


def element_partition(scenario: Scenario, t: float) -> SubArrayPartition:
    """One sub-array per element (spherical-wave oracle)."""
    return tile(scenario.ris_spec, 1, t)
