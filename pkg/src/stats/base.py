"""Statistic result types."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from src.channel.base import ChannelModel
from src.core.errors import DomainError


@dataclass(frozen=True)
class CorrelationEstimate:
    """Monte Carlo estimate with its standard error."""

    value: complex
    standard_error: float
    draws: int

    def __complex__(self) -> complex:
        return complex(self.value)

    def __abs__(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class CorrelationSeries:
    """Statistic values over a sweep axis.

    ``values`` is complex for correlations and real for capacities.
    """

    axis_label: str
    axis: NDArray[np.float64]
    values: NDArray
    model: Optional[ChannelModel] = None
    draws: int = 1
    standard_error: Optional[NDArray[np.float64]] = None

    def __post_init__(self) -> None:
        if len(self.axis) != len(self.values):
            raise DomainError(f"axis has {len(self.axis)} points, values {len(self.values)}")
        if len(self.axis) == 0:
            raise DomainError("empty sweep axis")
        if np.any(np.diff(self.axis) <= 0):
            raise DomainError(f"axis '{self.axis_label}' must be strictly increasing")

    def __len__(self) -> int:
        return len(self.axis)

    @property
    def magnitude(self) -> NDArray[np.float64]:
        return np.abs(self.values)

    @classmethod
    def from_estimates(
        cls,
        axis_label: str,
        axis: NDArray[np.float64],
        estimates: list[CorrelationEstimate],
        model: Optional[ChannelModel] = None,
    ) -> "CorrelationSeries":
        """Collect point estimates into a series."""
        return cls(
            axis_label=axis_label,
            axis=np.asarray(axis, dtype=float),
            values=np.array([e.value for e in estimates], dtype=complex),
            model=model,
            draws=estimates[0].draws if estimates else 0,
            standard_error=np.array([e.standard_error for e in estimates]),
        )


@dataclass(frozen=True)
class ErrorReport:
    """Normalized modeling error of one model against the spherical oracle."""

    error_db: float
    model: ChannelModel
    t: float
    elements_x: int
    elements_z: int
    max_side: int
    subarray_count: int

    @property
    def is_exact(self) -> bool:
        return math.isinf(self.error_db) and self.error_db < 0
