"""Spatial frequencies, array responses and the beam-domain transform."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from src.channel.base import ComplexMatrix
from src.core.errors import DomainError
from src.geometry.base import Angle, AnglePair, ArraySpec


def spatial_frequencies(
    angles: AnglePair, array: ArraySpec, wavelength: float
) -> tuple[Angle, Angle]:
    """
    Get the azimuth and vertical spatial frequencies of a path at an array.

    Their sum equals the path direction projected on the array axis, in
    wavelengths per antenna spacing.

    Args:
        angles: Path angles at the array
        array: Array description
        wavelength: Carrier wavelength in meters

    Returns:
        (azimuth, vertical) spatial frequencies
    """
    ratio = array.spacing / wavelength
    azimuth = (
        ratio
        * np.cos(angles.vertical)
        * np.cos(array.vertical_tilt)
        * np.cos(angles.azimuth - array.azimuth_tilt)
    )
    vertical = ratio * np.sin(angles.vertical) * np.sin(array.vertical_tilt)
    return azimuth, vertical


def array_response(
    length: int, theta_azimuth: float, theta_vertical: float
) -> NDArray[np.complex128]:
    """Response vector of a linear array, referenced to its first antenna."""
    if length < 1:
        raise DomainError(f"array length must be positive, got {length}")
    k = np.arange(length)
    return np.exp(2j * np.pi * k * (theta_azimuth + theta_vertical))


def steering(length: int, theta: NDArray[np.float64]) -> NDArray[np.complex128]:
    """
    Phases of a path at every antenna, referenced to the array center.

    Row p - 1 holds exp(j 2 pi ((length + 1) / 2 - p) theta), which is
    exp(jk <e, d_p>) for the centered antenna offset d_p.

    Args:
        length: Antenna count
        theta: Spatial frequency sums, one per path

    Returns:
        length x n matrix
    """
    offsets = (length - 1) / 2 - np.arange(length)
    return np.exp(2j * np.pi * np.multiply.outer(offsets, np.asarray(theta, dtype=float)))


def dirichlet(length: int, x: NDArray[np.float64]) -> NDArray[np.complex128]:
    """Geometric phase sum over k = 0..length-1 of exp(j 2 pi k x), elementwise in x."""
    x = np.asarray(x, dtype=float)
    k = np.arange(length)
    return np.exp(2j * np.pi * np.multiply.outer(x, k)).sum(axis=-1)


def beam_kernel(
    length: int, theta: NDArray[np.float64], beams: NDArray[np.float64]
) -> NDArray[np.complex128]:
    """
    Beam-domain kernel of paths with centered antenna phases.

    Combining the centered steering phases with the transform weights
    exp(-j 2 pi k theta_b) gives exp(j 2 pi c theta) D(-(theta + theta_b))
    with c = (length - 1) / 2, so beam b collects paths near -theta_b.

    Args:
        length: Antenna count
        theta: Spatial frequency sums, one per path
        beams: Beam grid frequencies

    Returns:
        n x len(beams) matrix
    """
    theta = np.asarray(theta, dtype=float)
    center = np.exp(1j * np.pi * (length - 1) * theta)
    return center[:, None] * dirichlet(length, -(theta[:, None] + np.asarray(beams)[None, :]))


def nearest_beam(theta: float, beams: NDArray[np.float64]) -> int:
    """1-based beam whose kernel peaks closest to spatial frequency theta."""
    offset = np.mod(np.asarray(beams) + theta + 0.5, 1.0) - 0.5
    return int(np.argmin(np.abs(offset))) + 1


def beam_frequencies(length: int) -> NDArray[np.float64]:
    """Beam grid (p - 0.5 - 0.5 n) / n for p = 1..n."""
    p = np.arange(1, length + 1)
    return (p - 0.5 - 0.5 * length) / length


def transform_matrix(length: int) -> ComplexMatrix:
    """Unitary matrix whose columns are normalized responses at the beam grid."""
    k = np.arange(length)
    return np.exp(2j * np.pi * np.outer(k, beam_frequencies(length))) / np.sqrt(length)


@dataclass(frozen=True)
class BeamGrid:
    """Beam grids and unitary transforms of the UAV (P) and vehicle (Q) arrays."""

    uav_count: int
    vehicle_count: int
    theta_uav: NDArray[np.float64] = field(init=False, repr=False)
    theta_vehicle: NDArray[np.float64] = field(init=False, repr=False)
    u: ComplexMatrix = field(init=False, repr=False)
    v: ComplexMatrix = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.uav_count < 1 or self.vehicle_count < 1:
            raise DomainError("beam grid needs at least one antenna per side")
        object.__setattr__(self, "theta_uav", beam_frequencies(self.uav_count))
        object.__setattr__(self, "theta_vehicle", beam_frequencies(self.vehicle_count))
        object.__setattr__(self, "u", transform_matrix(self.uav_count))
        object.__setattr__(self, "v", transform_matrix(self.vehicle_count))


def beam_transform(h_geometry: ComplexMatrix, grid: BeamGrid) -> ComplexMatrix:
    """
    Convert an antenna-domain Q x P matrix to the beam domain.

    Args:
        h_geometry: Antenna-domain matrix
        grid: Beam grid of matching size

    Returns:
        V^H H U^*
    """
    h_geometry = np.asarray(h_geometry)
    expected = (grid.vehicle_count, grid.uav_count)
    if h_geometry.shape != expected:
        raise DomainError(f"matrix shape {h_geometry.shape} does not match beam grid {expected}")
    return grid.v.conj().T @ h_geometry @ grid.u.conj()
