"""Two-leg geometry of paths bouncing off RIS units or scatterers."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.channel.beam import spatial_frequencies
from src.core.config import SPEED_OF_LIGHT, Scenario
from src.geometry.base import Side
from src.geometry.kinematics import (
    angles_between,
    distance,
    terminal_position,
    unit_direction,
    velocity,
)


@dataclass(frozen=True)
class Legs:
    """UAV -> point -> vehicle geometry of a batch of bounce points."""

    xi_uav: NDArray[np.float64]
    xi_vehicle: NDArray[np.float64]
    direction_uav: NDArray[np.float64]
    direction_vehicle: NDArray[np.float64]
    theta_uav: NDArray[np.float64]
    theta_vehicle: NDArray[np.float64]
    doppler_phase: NDArray[np.float64]

    @property
    def length(self) -> NDArray[np.float64]:
        return self.xi_uav + self.xi_vehicle

    @property
    def delay(self) -> NDArray[np.float64]:
        return self.length / SPEED_OF_LIGHT


def legs(scenario: Scenario, points: NDArray[np.float64], t: float) -> Legs:
    """
    Evaluate both legs of the paths through a set of bounce points.

    Args:
        scenario: Scenario
        points: Bounce points, shape (n, 3)
        t: Motion time in seconds

    Returns:
        Distances, directions, spatial frequency sums and Doppler phases
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    uav = terminal_position(Side.UAV, scenario, t)
    vehicle = terminal_position(Side.VEHICLE, scenario, t)

    angles_uav = angles_between(uav, points)
    angles_vehicle = angles_between(vehicle, points, absolute_height=True)
    direction_uav = unit_direction(angles_uav)
    direction_vehicle = unit_direction(angles_vehicle)

    theta_uav = np.add(*spatial_frequencies(angles_uav, scenario.uav_array, scenario.wavelength))
    theta_vehicle = np.add(
        *spatial_frequencies(angles_vehicle, scenario.vehicle_array, scenario.wavelength)
    )

    doppler = (
        scenario.wavenumber
        * t
        * (
            direction_uav @ velocity(Side.UAV, scenario)
            + direction_vehicle @ velocity(Side.VEHICLE, scenario)
        )
    )

    return Legs(
        xi_uav=distance(uav, points),
        xi_vehicle=distance(vehicle, points),
        direction_uav=direction_uav,
        direction_vehicle=direction_vehicle,
        theta_uav=np.asarray(theta_uav, dtype=float),
        theta_vehicle=np.asarray(theta_vehicle, dtype=float),
        doppler_phase=np.asarray(doppler, dtype=float),
    )
