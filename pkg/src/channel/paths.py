"""Propagation path sets and their antenna- and beam-domain kernels.

Every channel component is reduced to a ``PathSet``: one complex gain per
path plus the spatial frequency sums the path produces at the UAV and at the
vehicle array. The antenna at 1-based index p sees the path with phase
exp(j 2 pi ((P + 1) / 2 - p) theta), the exact phase of its offset from the
array center. The beam-domain coefficients follow from the same set through
the kernels this phase produces under the unitary transform.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from src.channel.base import ComplexMatrix
from src.channel.beam import BeamGrid, beam_kernel, steering
from src.core.errors import DomainError

# Upper bound on kernel cells evaluated at once by beam_matrix
KERNEL_CELLS = 1 << 21


@dataclass(frozen=True)
class PathSet:
    """Paths of one channel component.

    ``group`` assigns each path to a delay group (sub-array or cluster);
    ``delay`` repeats the group delay for every path of the group.
    """

    gain: NDArray[np.complex128]
    theta_uav: NDArray[np.float64]
    theta_vehicle: NDArray[np.float64]
    delay: NDArray[np.float64]
    group: NDArray[np.int64]

    def __post_init__(self) -> None:
        n = len(self.gain)
        for name in ("theta_uav", "theta_vehicle", "delay", "group"):
            if len(getattr(self, name)) != n:
                found = len(getattr(self, name))
                raise DomainError(f"path field '{name}' has {found} entries, expected {n}")

    def __len__(self) -> int:
        return len(self.gain)

    @property
    def group_count(self) -> int:
        return int(self.group.max()) + 1 if len(self.group) else 0

    def scaled(self, factor: complex) -> "PathSet":
        """Copy with every gain multiplied by factor."""
        return PathSet(
            gain=self.gain * factor,
            theta_uav=self.theta_uav,
            theta_vehicle=self.theta_vehicle,
            delay=self.delay,
            group=self.group,
        )

    def group_delays(self) -> NDArray[np.float64]:
        """Delay of each group, in group order."""
        delays = np.zeros(self.group_count)
        delays[self.group] = self.delay
        return delays

    def group_sums(self, terms: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """Sum per-path complex terms within each group."""
        real = np.bincount(self.group, weights=terms.real, minlength=self.group_count)
        imag = np.bincount(self.group, weights=terms.imag, minlength=self.group_count)
        return real + 1j * imag


def _check_index(index: int, count: int, what: str) -> None:
    if not 1 <= index <= count:
        raise DomainError(f"{what} index {index} outside 1..{count}")


def antenna_matrix(paths: PathSet, uav_count: int, vehicle_count: int) -> ComplexMatrix:
    """
    Get the antenna-domain channel matrix of a path set.

    Args:
        paths: Path set
        uav_count: UAV antennas P
        vehicle_count: Vehicle antennas Q

    Returns:
        Q x P complex matrix
    """
    u = steering(uav_count, paths.theta_uav)
    v = steering(vehicle_count, paths.theta_vehicle)
    return (v * paths.gain) @ u.T


def antenna_terms(
    paths: PathSet, p: int, q: int, uav_count: int, vehicle_count: int
) -> NDArray[np.complex128]:
    """Per-path contributions to the antenna pair (p, q), 1-based."""
    _check_index(p, uav_count, "UAV antenna")
    _check_index(q, vehicle_count, "vehicle antenna")
    offset_uav = (uav_count + 1) / 2 - p
    offset_vehicle = (vehicle_count + 1) / 2 - q
    phase = offset_uav * paths.theta_uav + offset_vehicle * paths.theta_vehicle
    return paths.gain * np.exp(2j * np.pi * phase)


def antenna_entry(paths: PathSet, p: int, q: int, uav_count: int, vehicle_count: int) -> complex:
    """Channel coefficient of the antenna pair (p, q), 1-based."""
    return complex(antenna_terms(paths, p, q, uav_count, vehicle_count).sum())


def beam_matrix(paths: PathSet, grid: BeamGrid) -> ComplexMatrix:
    """
    Get the beam-domain channel matrix directly from the kernel sums.

    Args:
        paths: Path set
        grid: Beam grid

    Returns:
        Q x P complex matrix equal to the beam transform of the antenna matrix
    """
    n_uav, n_vehicle = grid.uav_count, grid.vehicle_count
    chunk = max(1, KERNEL_CELLS // max(n_uav, n_vehicle) ** 2)

    h = np.zeros((n_vehicle, n_uav), dtype=complex)
    for start in range(0, len(paths), chunk):
        part = slice(start, start + chunk)
        kernel_uav = beam_kernel(n_uav, paths.theta_uav[part], grid.theta_uav)
        kernel_vehicle = beam_kernel(n_vehicle, paths.theta_vehicle[part], grid.theta_vehicle)
        h += (kernel_vehicle * paths.gain[part, None]).T @ kernel_uav
    return h / np.sqrt(n_uav * n_vehicle)


def beam_terms(paths: PathSet, p: int, q: int, grid: BeamGrid) -> NDArray[np.complex128]:
    """Per-path contributions to the beam pair (p, q), 1-based."""
    _check_index(p, grid.uav_count, "UAV beam")
    _check_index(q, grid.vehicle_count, "vehicle beam")
    kernel_uav = beam_kernel(grid.uav_count, paths.theta_uav, grid.theta_uav[p - 1 : p])[:, 0]
    kernel_vehicle = beam_kernel(
        grid.vehicle_count, paths.theta_vehicle, grid.theta_vehicle[q - 1 : q]
    )[:, 0]
    return paths.gain * kernel_uav * kernel_vehicle / np.sqrt(grid.uav_count * grid.vehicle_count)


def beam_entry(paths: PathSet, p: int, q: int, grid: BeamGrid) -> complex:
    """Channel coefficient of the beam pair (p, q), 1-based."""
    return complex(beam_terms(paths, p, q, grid).sum())
