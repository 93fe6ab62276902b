"""RIS propagation component."""

import math
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from src.channel.base import ComplexMatrix, RisState
from src.channel.beam import BeamGrid, nearest_beam
from src.channel.legs import legs
from src.channel.paths import PathSet, antenna_matrix, beam_matrix
from src.core.config import Scenario
from src.core.errors import DomainError
from src.partition.base import SubArrayPartition
from src.partition.fraunhofer import ris_element_positions

TWO_PI = 2 * math.pi


def wrap_phase(phase: NDArray[np.float64]) -> NDArray[np.float64]:
    """Wrap phases to [0, 2pi)."""
    wrapped = np.mod(phase, TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def subarray_weights(
    scenario: Scenario, partition: SubArrayPartition, t: float
) -> NDArray[np.complex128]:
    """
    Get the reflecting weight of every sub-array.

    Args:
        scenario: Scenario; ``ris.weighting`` selects the mode
        partition: Partition at t
        t: Motion time in seconds

    Returns:
        One complex weight per sub-array
    """
    mode = scenario.ris.weighting
    if mode == "unit":
        return np.ones(partition.subarray_count, dtype=complex)
    if mode == "count":
        return partition.counts.astype(complex)

    # array_factor: planar-wave phase of each member relative to its center
    geometry = legs(scenario, partition.centers, t)
    steering = geometry.direction_uav + geometry.direction_vehicle
    grid = ris_element_positions(scenario.ris_spec)
    weights = np.empty(partition.subarray_count, dtype=complex)
    for s, (across, up) in enumerate(partition.slices):
        offsets = grid[up, across].reshape(-1, 3) - partition.centers[s]
        weights[s] = np.exp(-1j * scenario.wavenumber * (offsets @ steering[s])).sum()
    return weights


def aligned_scale(scenario: Scenario, paths: PathSet) -> float:
    """
    Get the RMS entry magnitude of the RIS component with every sub-array co-phased.

    Dividing by it gives the ideally regulated panel unit mean entry power,
    so the Rician factor is a power ratio. Regulation and Doppler phases do
    not change it.

    Args:
        scenario: Scenario
        paths: RIS paths, unnormalized

    Returns:
        Scale, zero for a panel that reflects nothing
    """
    aligned = PathSet(
        gain=np.abs(paths.gain).astype(complex),
        theta_uav=paths.theta_uav,
        theta_vehicle=paths.theta_vehicle,
        delay=paths.delay,
        group=paths.group,
    )
    count = scenario.uav.antennas * scenario.vehicle.antennas
    h = antenna_matrix(aligned, scenario.uav.antennas, scenario.vehicle.antennas)
    return float(np.linalg.norm(h)) / math.sqrt(count)


def ris_peak_beam(scenario: Scenario, t: float) -> tuple[int, int]:
    """1-based (UAV, vehicle) beam pair collecting the path through the RIS center."""
    geometry = legs(scenario, np.asarray(scenario.ris.center, dtype=float), t)
    grid = BeamGrid(scenario.uav.antennas, scenario.vehicle.antennas)
    return (
        nearest_beam(float(geometry.theta_uav[0]), grid.theta_uav),
        nearest_beam(float(geometry.theta_vehicle[0]), grid.theta_vehicle),
    )


def make_ris_state(
    scenario: Scenario,
    partition: SubArrayPartition,
    t: float,
    rng: Optional[np.random.Generator] = None,
    regulated_at: Optional[float] = None,
) -> RisState:
    """
    Get the RIS regulation of every sub-array under the configured policy.

    Args:
        scenario: Scenario; ``ris.phase_policy`` and ``ris.amplitude`` apply
        partition: Partition at t
        t: Motion time in seconds
        rng: Random stream, required by the random policy
        regulated_at: Time the co-phasing regulation is computed for, t if omitted

    Returns:
        RIS state
    """
    count = partition.subarray_count
    amplitude = np.full(count, scenario.ris.amplitude)
    policy = scenario.ris.phase_policy

    if policy == "zero":
        phase = np.zeros(count)
    elif policy == "co-phasing":
        # cancel path and Doppler phase of each center at the regulation time
        when = t if regulated_at is None else regulated_at
        geometry = legs(scenario, partition.centers, when)
        phase = wrap_phase(scenario.wavenumber * geometry.length - geometry.doppler_phase)
    else:
        if rng is None:
            raise DomainError("random RIS phase policy needs a random stream")
        ris = scenario.ris_spec
        field = np.exp(1j * rng.uniform(0.0, TWO_PI, size=(ris.elements_z, ris.elements_x)))
        means = np.array([field[up, across].mean() for across, up in partition.slices])
        phase = wrap_phase(np.angle(means))

    return RisState(amplitude=amplitude, phase=phase)


def ris_paths(
    scenario: Scenario,
    partition: SubArrayPartition,
    ris_state: RisState,
    t: float,
) -> PathSet:
    """
    Get one path per sub-array, unnormalized.

    Args:
        scenario: Scenario
        partition: Partition at t
        ris_state: Regulation per sub-array
        t: Motion time in seconds

    Returns:
        Path set grouped by sub-array
    """
    if len(ris_state) != partition.subarray_count:
        raise DomainError(
            f"RIS state has {len(ris_state)} units, partition has {partition.subarray_count}"
        )

    geometry = legs(scenario, partition.centers, t)
    weights = subarray_weights(scenario, partition, t)
    gain = (
        weights
        * ris_state.coefficients
        * np.exp(1j * (geometry.doppler_phase - scenario.wavenumber * geometry.length))
    )
    return PathSet(
        gain=gain,
        theta_uav=geometry.theta_uav,
        theta_vehicle=geometry.theta_vehicle,
        delay=geometry.delay,
        group=np.arange(partition.subarray_count),
    )


def ris_cir_geometry(
    scenario: Scenario,
    partition: SubArrayPartition,
    ris_state: RisState,
    t: float,
) -> tuple[ComplexMatrix, NDArray[np.float64]]:
    """
    Get the antenna-domain RIS channel matrix.

    Returns:
        (Q x P matrix, delay per sub-array in seconds)
    """
    paths = ris_paths(scenario, partition, ris_state, t)
    h = antenna_matrix(paths, scenario.uav.antennas, scenario.vehicle.antennas)
    return h, paths.group_delays()


def ris_cir_beam(
    scenario: Scenario,
    partition: SubArrayPartition,
    ris_state: RisState,
    t: float,
) -> tuple[ComplexMatrix, NDArray[np.float64]]:
    """
    Get the beam-domain RIS channel matrix from the kernel sums.

    Returns:
        (Q x P matrix, delay per sub-array in seconds)
    """
    paths = ris_paths(scenario, partition, ris_state, t)
    grid = BeamGrid(scenario.uav.antennas, scenario.vehicle.antennas)
    return beam_matrix(paths, grid), paths.group_delays()
