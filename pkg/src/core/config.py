"""Scenario configuration for the RIS channel simulator."""

import math
import os
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from src.core.errors import ConfigError
from src.geometry.base import ArraySpec, MotionSpec, check_tilt
from src.partition.base import PanelNormal, RisSpec

SPEED_OF_LIGHT = 299_792_458.0

THREADS_ENV = "RIS_SIM_THREADS"
LOG_LEVEL_ENV = "RIS_SIM_LOG_LEVEL"

# Model symbols appended to error messages
SYMBOLS = {
    "uav.antennas": "P",
    "uav.spacing": "δ_T",
    "uav.spacing_wavelengths": "δ_T/λ",
    "uav.azimuth_tilt": "ψ^azi_T",
    "uav.vertical_tilt": "ψ^ver_T",
    "uav.speed": "v_T",
    "uav.azimuth_heading": "η^azi_T",
    "uav.vertical_heading": "η^ver_T",
    "uav.height": "H_0",
    "vehicle.antennas": "Q",
    "vehicle.spacing": "δ_R",
    "vehicle.spacing_wavelengths": "δ_R/λ",
    "vehicle.azimuth_tilt": "ψ^azi_R",
    "vehicle.vertical_tilt": "ψ^ver_R",
    "vehicle.speed": "v_R",
    "vehicle.azimuth_heading": "η^azi_R",
    "vehicle.distance": "D_0",
    "ris.elements_x": "M_x",
    "ris.elements_z": "M_z",
    "ris.spacing": "d_M",
    "ris.spacing_wavelengths": "d_M/λ",
    "ris.center": "d_RIS",
    "ris.amplitude": "χ",
    "channel.wavelength": "λ",
    "channel.rician_k": "K",
    "scatterers.clusters": "N",
    "scatterers.rays_per_cluster": "n_L",
    "scatterers.ray_spread": "σ_ray",
}


class SectionModel(BaseModel):
    """Scenario section: unknown keys rejected, `<name>_deg` keys accepted."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="before")
    @classmethod
    def convert_degrees(cls, data: Any) -> Any:
        """Convert `<name>_deg` keys to radians under `<name>`."""
        if not isinstance(data, dict):
            return data

        converted: dict[str, Any] = {}
        for key, value in data.items():
            if isinstance(key, str) and key.endswith("_deg") and key[:-4] in cls.model_fields:
                name = key[:-4]
                if name in data:
                    raise ValueError(f"'{key}' and '{name}' are both set")
                try:
                    converted[name] = math.radians(float(value))
                except (TypeError, ValueError) as e:
                    raise ValueError(f"'{key}' must be a number of degrees") from e
            else:
                converted[key] = value
        return converted


class TerminalConfig(SectionModel):
    """Antenna array and motion of one link end."""

    antennas: int = Field(default=30, ge=1)
    spacing: Optional[float] = Field(default=None, gt=0)
    spacing_wavelengths: float = Field(default=0.5, gt=0)
    azimuth_tilt: float = math.pi / 3
    vertical_tilt: float = math.pi / 4
    speed: float = Field(default=10.0, ge=0)
    azimuth_heading: float = math.pi / 2

    @field_validator("azimuth_tilt", "vertical_tilt", "azimuth_heading")
    @classmethod
    def angle_in_range(cls, v: float) -> float:
        """Validate angle range."""
        return check_tilt(v)

    def spacing_m(self, wavelength: float) -> float:
        """Antenna spacing in meters."""
        return self.spacing if self.spacing is not None else self.spacing_wavelengths * wavelength


class UavConfig(TerminalConfig):
    """UAV transmitter."""

    vertical_heading: float = math.pi / 3
    height: float = Field(default=50.0, ge=0)

    @field_validator("vertical_heading")
    @classmethod
    def heading_in_range(cls, v: float) -> float:
        """Validate vertical heading range."""
        if not -math.pi / 2 <= v <= math.pi / 2:
            raise ValueError(f"angle {v} rad outside [-pi/2, pi/2]")
        return v


class VehicleConfig(TerminalConfig):
    """Vehicle receiver, moving in the ground plane."""

    antennas: int = Field(default=40, ge=1)
    distance: float = Field(default=100.0)


class RisConfig(SectionModel):
    """Reconfigurable intelligent surface on a building facade."""

    elements_x: int = Field(default=50, ge=1)
    elements_z: int = Field(default=50, ge=1)
    spacing: Optional[float] = Field(default=None, gt=0)
    spacing_wavelengths: float = Field(default=0.5, gt=0)
    center: tuple[float, float, float] = (50.0, 50.0, 20.0)
    normal: PanelNormal = "-y"
    amplitude: float = Field(default=1.0, ge=0, le=1)
    phase_policy: Literal["zero", "random", "co-phasing"] = "co-phasing"
    weighting: Literal["count", "unit", "array_factor"] = "count"


class PartitionConfig(SectionModel):
    """Sub-array partition overrides."""

    forced_side: Optional[int] = Field(default=None, ge=1)


class ChannelConfig(SectionModel):
    """Carrier and component mixing."""

    wavelength: float = Field(default=0.0625, gt=0)
    rician_k: float = Field(default=1.0, ge=0)


class ScattererConfig(SectionModel):
    """Random scatterer clusters of the NLoS component."""

    clusters: int = Field(default=10, ge=1)
    rays_per_cluster: int = Field(default=20, ge=1)
    box_min: tuple[float, float, float] = (10.0, -30.0, 0.0)
    box_max: tuple[float, float, float] = (90.0, 30.0, 40.0)
    ray_spread: float = Field(default=5.0, ge=0)

    @model_validator(mode="after")
    def box_ordered(self) -> "ScattererConfig":
        """Validate cluster box corners."""
        if any(lo > hi for lo, hi in zip(self.box_min, self.box_max)):
            raise ValueError("box_min must not exceed box_max on any axis")
        return self


class SimulationConfig(SectionModel):
    """Evaluation point and Monte Carlo settings."""

    t: float = Field(default=1.0, ge=0)
    dt: float = Field(default=0.01, ge=0)
    df: float = Field(default=1.0e6, ge=0)
    snr_db: float = 10.0
    pair: tuple[int, int] = (1, 1)
    draws: int = Field(default=2000, ge=1)
    seed: int = Field(default=2024, ge=0)
    threads: Optional[int] = Field(default=None, ge=1)

    @field_validator("pair")
    @classmethod
    def pair_positive(cls, v: tuple[int, int]) -> tuple[int, int]:
        """Validate 1-based antenna pair."""
        if min(v) < 1:
            raise ValueError("antenna indices are 1-based")
        return v


class LoggingConfig(SectionModel):
    """Logging configuration."""

    level: str = "INFO"
    file: Optional[str] = None
    format: Literal["json", "plain"] = "json"


class Scenario(SectionModel):
    """Complete scenario: geometry, RIS, scatterers and evaluation settings."""

    uav: UavConfig = Field(default_factory=UavConfig)
    vehicle: VehicleConfig = Field(default_factory=VehicleConfig)
    ris: RisConfig = Field(default_factory=RisConfig)
    partition: PartitionConfig = Field(default_factory=PartitionConfig)
    channel: ChannelConfig = Field(default_factory=ChannelConfig)
    scatterers: ScattererConfig = Field(default_factory=ScattererConfig)
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @model_validator(mode="after")
    def pair_in_arrays(self) -> "Scenario":
        """Validate evaluation pair against array sizes."""
        p, q = self.simulation.pair
        if p > self.uav.antennas or q > self.vehicle.antennas:
            raise ValueError(
                f"simulation.pair ({p}, {q}) outside arrays of "
                f"{self.uav.antennas} x {self.vehicle.antennas} antennas"
            )
        return self

    @property
    def wavelength(self) -> float:
        return self.channel.wavelength

    @property
    def wavenumber(self) -> float:
        """Free-space wavenumber 2*pi/lambda."""
        return 2 * math.pi / self.channel.wavelength

    @property
    def carrier_frequency(self) -> float:
        return SPEED_OF_LIGHT / self.channel.wavelength

    @property
    def uav_array(self) -> ArraySpec:
        return ArraySpec(
            count=self.uav.antennas,
            spacing=self.uav.spacing_m(self.wavelength),
            azimuth_tilt=self.uav.azimuth_tilt,
            vertical_tilt=self.uav.vertical_tilt,
        )

    @property
    def vehicle_array(self) -> ArraySpec:
        return ArraySpec(
            count=self.vehicle.antennas,
            spacing=self.vehicle.spacing_m(self.wavelength),
            azimuth_tilt=self.vehicle.azimuth_tilt,
            vertical_tilt=self.vehicle.vertical_tilt,
        )

    @property
    def uav_motion(self) -> MotionSpec:
        return MotionSpec(
            speed=self.uav.speed,
            azimuth_heading=self.uav.azimuth_heading,
            vertical_heading=self.uav.vertical_heading,
        )

    @property
    def vehicle_motion(self) -> MotionSpec:
        return MotionSpec(speed=self.vehicle.speed, azimuth_heading=self.vehicle.azimuth_heading)

    @property
    def ris_spec(self) -> RisSpec:
        spacing = self.ris.spacing
        if spacing is None:
            spacing = self.ris.spacing_wavelengths * self.wavelength
        return RisSpec(
            elements_x=self.ris.elements_x,
            elements_z=self.ris.elements_z,
            element_spacing=spacing,
            center=self.ris.center,
            normal=self.ris.normal,
        )

    @property
    def threads(self) -> int:
        """Worker count: scenario setting, then RIS_SIM_THREADS, then CPU count."""
        if self.simulation.threads is not None:
            return self.simulation.threads
        env = os.getenv(THREADS_ENV)
        if env:
            try:
                return max(1, int(env))
            except ValueError as e:
                raise ConfigError(f"{THREADS_ENV} must be an integer, got '{env}'") from e
        return os.cpu_count() or 1

    @classmethod
    def from_dict(
        cls, data: Optional[dict[str, Any]], lines: Optional[dict[str, int]] = None
    ) -> "Scenario":
        """
        Validate a scenario mapping.

        Args:
            data: Parsed scenario mapping (None means all defaults)
            lines: Optional dotted key -> source line map for error messages

        Returns:
            Validated scenario
        """
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("scenario file must contain a mapping of sections", line=1)

        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise _to_config_error(e, lines or {}) from e

    @classmethod
    def from_file(cls, config_path: Path) -> "Scenario":
        """Load a scenario from a YAML file."""
        # Load environment variables
        load_dotenv()

        try:
            with open(config_path) as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read scenario file {config_path}: {e}") from e

        try:
            data = yaml.safe_load(text)
            lines = _key_lines(yaml.compose(text))
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ConfigError(f"cannot parse {config_path}: {e}", line=line) from e

        return cls.from_dict(data, lines)

    def with_overrides(self, **overrides: Any) -> "Scenario":
        """
        Get a validated copy with dotted keys replaced.

        Args:
            **overrides: Dotted keys with `__` as separator, e.g. ``uav__height=200``

        Returns:
            New scenario
        """
        data = self.model_dump()
        for dotted, value in overrides.items():
            section, _, field = dotted.partition("__")
            if section not in data or not field:
                raise ConfigError(f"unknown scenario key '{dotted.replace('__', '.')}'")
            data[section][field] = value
        return Scenario.from_dict(data)


def _key_lines(node: Optional[yaml.Node], prefix: str = "") -> dict[str, int]:
    """Map dotted keys of a composed YAML document to 1-based lines."""
    lines: dict[str, int] = {}
    if not isinstance(node, yaml.MappingNode):
        return lines

    for key_node, value_node in node.value:
        key = str(key_node.value)
        dotted = f"{prefix}{key}"
        lines[dotted] = key_node.start_mark.line + 1
        if key.endswith("_deg"):
            lines[dotted[:-4]] = key_node.start_mark.line + 1
        lines.update(_key_lines(value_node, prefix=f"{dotted}."))
    return lines


def _to_config_error(error: ValidationError, lines: dict[str, int]) -> ConfigError:
    """Convert a pydantic error into a ConfigError naming key and line."""
    messages = []
    first_key = None
    first_line = None

    for item in error.errors():
        loc = [str(part) for part in item["loc"] if not isinstance(part, int)]
        key = ".".join(loc) if loc else "<root>"
        line = lines.get(key)
        if line is None and loc:
            line = lines.get(loc[0])

        if item["type"] == "extra_forbidden":
            text = f"unknown key '{key}'"
        else:
            symbol = SYMBOLS.get(key)
            label = f"{key} ({symbol})" if symbol else key
            text = f"{label}: {item['msg']}"
        if line is not None:
            text += f" (line {line})"
        messages.append(text)

        if first_key is None:
            first_key, first_line = key, line

    return ConfigError("; ".join(messages), key=first_key, line=first_line)
