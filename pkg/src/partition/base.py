"""RIS panel description and sub-array partition value types."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

PanelNormal = Literal["-y", "+y", "-x", "+x"]


class RisSpec(BaseModel):
    """Planar RIS standing in a vertical plane."""

    model_config = ConfigDict(frozen=True)

    elements_x: int = Field(ge=1)
    elements_z: int = Field(ge=1)
    element_spacing: float = Field(gt=0)
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    normal: PanelNormal = "-y"

    @property
    def element_count(self) -> int:
        return self.elements_x * self.elements_z

    @property
    def horizontal_axis(self) -> NDArray[np.float64]:
        """Unit vector of the panel's horizontal element axis."""
        if self.normal in ("-y", "+y"):
            return np.array([1.0, 0.0, 0.0])
        return np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class SubArrayPartition:
    """Even tiling of the RIS grid at one time instant.

    Sub-arrays are ordered with the horizontal index outermost; ``counts`` and
    ``centers`` follow that order.
    """

    t: float
    max_side: int
    sizes_x: tuple[int, ...]
    sizes_z: tuple[int, ...]
    counts: NDArray[np.int64]
    centers: NDArray[np.float64]
    slices: tuple[tuple[slice, slice], ...]

    @property
    def subarrays_x(self) -> int:
        return len(self.sizes_x)

    @property
    def subarrays_z(self) -> int:
        return len(self.sizes_z)

    @property
    def subarray_count(self) -> int:
        return self.subarrays_x * self.subarrays_z

    @property
    def is_single(self) -> bool:
        """True when the whole panel is one planar-wave sub-array."""
        return self.subarray_count == 1

    def __repr__(self) -> str:
        return (
            f"SubArrayPartition(t={self.t}, max_side={self.max_side}, "
            f"grid={self.subarrays_x}x{self.subarrays_z})"
        )
