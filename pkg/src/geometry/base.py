"""Geometry value types shared by the channel model."""

import math
from enum import Enum
from typing import NamedTuple, Union

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator

# Position or direction in the global frame, shape (3,) or stacked (..., 3)
Vec3 = NDArray[np.float64]

Angle = Union[float, NDArray[np.float64]]


class Side(str, Enum):
    """Link end carrying a uniform linear array."""

    UAV = "uav"
    VEHICLE = "vehicle"


def vec3(x: float, y: float, z: float) -> Vec3:
    """Build a single position vector."""
    return np.array([x, y, z], dtype=float)


def check_tilt(value: float) -> float:
    """Reject angles outside (-pi, pi]."""
    if not -math.pi < value <= math.pi:
        raise ValueError(f"angle {value} rad outside (-pi, pi]")
    return value


class ArraySpec(BaseModel):
    """Uniform linear array of a terminal."""

    model_config = ConfigDict(frozen=True)

    count: int = Field(ge=1)
    spacing: float = Field(gt=0)
    azimuth_tilt: float = 0.0
    vertical_tilt: float = 0.0

    @field_validator("azimuth_tilt", "vertical_tilt")
    @classmethod
    def tilt_in_range(cls, v: float) -> float:
        """Validate tilt range."""
        return check_tilt(v)


class MotionSpec(BaseModel):
    """Constant-velocity motion of a terminal."""

    model_config = ConfigDict(frozen=True)

    speed: float = Field(ge=0)
    azimuth_heading: float = 0.0
    vertical_heading: float = 0.0


class AnglePair(NamedTuple):
    """Azimuth in (-pi, pi] and vertical angle in [-pi/2, pi/2], radians."""

    azimuth: Angle
    vertical: Angle
