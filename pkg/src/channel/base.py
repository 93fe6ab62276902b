"""Channel value types."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from src.core.errors import DomainError

ComplexMatrix = NDArray[np.complex128]


class ChannelModel(str, Enum):
    """RIS component model variant."""

    SPHERICAL = "spherical"
    PLANAR = "planar"
    SUBARRAY = "subarray"
    BEAM = "beam"

    @property
    def in_beam_domain(self) -> bool:
        return self is ChannelModel.BEAM

    @classmethod
    def parse(cls, value: str) -> "ChannelModel":
        """Look up a model by name."""
        try:
            return cls(value.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown model '{value}', expected one of: {valid}") from None


@dataclass(frozen=True)
class RisState:
    """Amplitude and phase of every reflecting unit at one instant."""

    amplitude: NDArray[np.float64]
    phase: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.amplitude.shape != self.phase.shape:
            raise DomainError("amplitude and phase must have the same shape")
        if np.any(self.amplitude < 0) or np.any(self.amplitude > 1):
            raise DomainError("RIS amplitude outside [0, 1]")
        if np.any(self.phase < 0) or np.any(self.phase >= 2 * np.pi):
            raise DomainError("RIS phase not wrapped to [0, 2pi)")

    def __len__(self) -> int:
        return len(self.amplitude)

    @property
    def coefficients(self) -> NDArray[np.complex128]:
        """Complex reflection coefficient per unit."""
        return self.amplitude * np.exp(1j * self.phase)


@dataclass(frozen=True)
class ClusterSet:
    """Scatterer clusters of one realization.

    ``rays`` has shape (clusters, rays_per_cluster, 3) and ``initial_phase``
    shape (clusters, rays_per_cluster).
    """

    centers: NDArray[np.float64]
    rays: NDArray[np.float64]
    initial_phase: NDArray[np.float64]

    @property
    def cluster_count(self) -> int:
        return self.rays.shape[0]

    @property
    def rays_per_cluster(self) -> int:
        return self.rays.shape[1]

    @property
    def ray_count(self) -> int:
        return self.cluster_count * self.rays_per_cluster


@dataclass(frozen=True)
class ChannelRealization:
    """Channel matrices of one model at one instant.

    ``ris`` is normalized by the total reflecting weight; ``combined`` is the
    Rician mix of ``ris`` and ``nlos``. Beam-model matrices are in the beam
    domain.
    """

    model: ChannelModel
    t: float
    ris: ComplexMatrix
    nlos: ComplexMatrix
    combined: ComplexMatrix
    ris_delays: NDArray[np.float64]
    nlos_delays: NDArray[np.float64]
    rician_k: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.combined.shape  # type: ignore[return-value]
