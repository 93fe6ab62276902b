"""Positions, motion and angles of the link ends."""

import numpy as np
from numpy.typing import NDArray

from src.core.config import Scenario
from src.core.errors import DomainError
from src.geometry.base import AnglePair, ArraySpec, Side, Vec3, vec3


def array_axis(array: ArraySpec) -> Vec3:
    """Unit vector along a linear array, from its tilt angles."""
    cos_ver = np.cos(array.vertical_tilt)
    return vec3(
        cos_ver * np.cos(array.azimuth_tilt),
        cos_ver * np.sin(array.azimuth_tilt),
        np.sin(array.vertical_tilt),
    )


def antenna_offset(array: ArraySpec, index: int) -> Vec3:
    """
    Get the offset of one antenna from the array midpoint.

    Args:
        array: Array description
        index: 1-based antenna index

    Returns:
        Offset vector in meters
    """
    if not 1 <= index <= array.count:
        raise DomainError(f"antenna index {index} outside 1..{array.count}")
    scale = (array.count - 2 * index + 1) / 2 * array.spacing
    return scale * array_axis(array)


def antenna_offsets(array: ArraySpec) -> NDArray:
    """Offsets of all antennas, shape (count, 3), in index order."""
    indices = np.arange(1, array.count + 1)
    scale = (array.count - 2 * indices + 1) / 2 * array.spacing
    return scale[:, None] * array_axis(array)


def terminal_position(side: Side, scenario: Scenario, t: float) -> Vec3:
    """
    Get the array midpoint of a terminal at motion time t.

    Args:
        side: UAV or vehicle
        scenario: Scenario
        t: Motion time in seconds

    Returns:
        Position in meters
    """
    if t < 0:
        raise DomainError(f"motion time must be non-negative, got {t}")
    if side is Side.UAV:
        start = vec3(0.0, 0.0, scenario.uav.height)
    else:
        start = vec3(scenario.vehicle.distance, 0.0, 0.0)
    return start + velocity(side, scenario) * t


def velocity(side: Side, scenario: Scenario) -> Vec3:
    """Velocity vector of a terminal in m/s."""
    if side is Side.UAV:
        motion = scenario.uav_motion
    else:
        motion = scenario.vehicle_motion
    cos_ver = np.cos(motion.vertical_heading)
    return motion.speed * vec3(
        cos_ver * np.cos(motion.azimuth_heading),
        cos_ver * np.sin(motion.azimuth_heading),
        np.sin(motion.vertical_heading),
    )


def antenna_positions(side: Side, scenario: Scenario, t: float) -> NDArray:
    """Absolute antenna positions of a terminal, shape (count, 3)."""
    array = scenario.uav_array if side is Side.UAV else scenario.vehicle_array
    return terminal_position(side, scenario, t) + antenna_offsets(array)


def distance(a: NDArray, b: NDArray) -> NDArray:
    """Euclidean distance, broadcasting over stacked (..., 3) inputs."""
    return np.linalg.norm(np.asarray(b, dtype=float) - np.asarray(a, dtype=float), axis=-1)


def angles_between(origin: NDArray, target: NDArray, absolute_height: bool = False) -> AnglePair:
    """
    Get azimuth and vertical angles of the direction from origin to target.

    Args:
        origin: Observation point(s), shape (3,) or (..., 3)
        target: Target point(s), broadcastable against origin
        absolute_height: Use the target's absolute z instead of the z
            difference (receiver-side vertical angles)

    Returns:
        Angles in radians; azimuth in (-pi, pi]
    """
    origin = np.asarray(origin, dtype=float)
    target = np.asarray(target, dtype=float)
    delta = target - origin
    if np.any(np.all(delta == 0.0, axis=-1)):
        raise DomainError("angles undefined between coincident points")

    azimuth = np.arctan2(delta[..., 1], delta[..., 0])
    azimuth = np.where(azimuth == -np.pi, np.pi, azimuth)
    rise = target[..., 2] if absolute_height else delta[..., 2]
    vertical = np.arctan2(rise, np.hypot(delta[..., 0], delta[..., 1]))

    if azimuth.ndim == 0:
        return AnglePair(float(azimuth), float(vertical))
    return AnglePair(azimuth, vertical)


def unit_direction(angles: AnglePair) -> NDArray:
    """Unit vector for an angle pair, shape (3,) or (..., 3)."""
    azimuth = np.asarray(angles.azimuth, dtype=float)
    vertical = np.asarray(angles.vertical, dtype=float)
    cos_ver = np.cos(vertical)
    return np.stack(
        [cos_ver * np.cos(azimuth), cos_ver * np.sin(azimuth), np.sin(vertical)], axis=-1
    )
