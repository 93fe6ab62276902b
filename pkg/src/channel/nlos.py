"""Scattered (NLoS) propagation component."""

import math

import numpy as np
from numpy.typing import NDArray

from src.channel.base import ClusterSet, ComplexMatrix
from src.channel.beam import BeamGrid
from src.channel.legs import legs
from src.channel.paths import PathSet, antenna_matrix, beam_matrix
from src.core.config import Scenario
from src.core.errors import DomainError
from src.core.rng import Purpose, stream


def generate_clusters(scenario: Scenario, seed: int, realization: int) -> ClusterSet:
    """
    Draw the scatterer clusters of one Monte Carlo realization.

    Cluster centers are uniform in the configured box, rays are Gaussian
    around their center and each ray gets a uniform initial phase.

    Args:
        scenario: Scenario
        seed: Scenario seed
        realization: Realization index

    Returns:
        Cluster set
    """
    config = scenario.scatterers
    placement = stream(seed, realization, Purpose.CLUSTERS)
    phases = stream(seed, realization, Purpose.RAY_PHASES)

    centers = placement.uniform(config.box_min, config.box_max, size=(config.clusters, 3))
    spread = placement.normal(
        0.0, config.ray_spread, size=(config.clusters, config.rays_per_cluster, 3)
    )
    initial_phase = phases.uniform(
        0.0, 2 * math.pi, size=(config.clusters, config.rays_per_cluster)
    )
    rays = centers[:, None, :] + spread
    return ClusterSet(centers=centers, rays=rays, initial_phase=initial_phase)


def cluster_delays(scenario: Scenario, clusters: ClusterSet, t: float) -> NDArray[np.float64]:
    """Delay of each cluster from its center, seconds."""
    return legs(scenario, clusters.centers, t).delay


def nlos_paths(scenario: Scenario, clusters: ClusterSet, t: float) -> PathSet:
    """
    Get one path per ray, normalized to unit mean power.

    Args:
        scenario: Scenario
        clusters: Cluster set
        t: Motion time in seconds

    Returns:
        Path set grouped by cluster
    """
    if clusters.cluster_count == 0 or clusters.rays_per_cluster == 0:
        raise DomainError("NLoS component needs at least one cluster with one ray")

    geometry = legs(scenario, clusters.rays.reshape(-1, 3), t)
    phase = (
        clusters.initial_phase.reshape(-1)
        - scenario.wavenumber * geometry.length
        + geometry.doppler_phase
    )
    gain = np.exp(1j * phase) / math.sqrt(clusters.ray_count)
    group = np.repeat(np.arange(clusters.cluster_count), clusters.rays_per_cluster)

    return PathSet(
        gain=gain,
        theta_uav=geometry.theta_uav,
        theta_vehicle=geometry.theta_vehicle,
        delay=cluster_delays(scenario, clusters, t)[group],
        group=group,
    )


def nlos_cir_geometry(
    scenario: Scenario, clusters: ClusterSet, t: float
) -> tuple[ComplexMatrix, NDArray[np.float64]]:
    """
    Get the antenna-domain NLoS channel matrix.

    Returns:
        (Q x P matrix, delay per cluster in seconds)
    """
    paths = nlos_paths(scenario, clusters, t)
    h = antenna_matrix(paths, scenario.uav.antennas, scenario.vehicle.antennas)
    return h, paths.group_delays()


def nlos_cir_beam(
    scenario: Scenario, clusters: ClusterSet, t: float
) -> tuple[ComplexMatrix, NDArray[np.float64]]:
    """
    Get the beam-domain NLoS channel matrix from the kernel sums.

    Returns:
        (Q x P matrix, delay per cluster in seconds)
    """
    paths = nlos_paths(scenario, clusters, t)
    grid = BeamGrid(scenario.uav.antennas, scenario.vehicle.antennas)
    return beam_matrix(paths, grid), paths.group_delays()
