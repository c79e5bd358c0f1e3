"""
Sweep specification and its flat key=value configuration format.

    materials=gold,air
    f=0.5
    lambda=1um
    H=100nm,300nm,600nm
    R=180um
    a_points=64
    outputs=normal_normalized

Lengths always carry a unit (nm, um, µm, mm, m); lists are comma separated.
"""

import logging
import re
from decimal import Decimal
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.materials.catalog import material_from_name, normalize_material_name
from src.materials.dielectric import DielectricModel
from src.quadrature.settings import QuadratureSettings
from src.spectral.lamellar import LamellarProfile
from src.utils import config
from src.utils.env_utils import iter_key_value_lines
from src.utils.exceptions import ConfigParseError, ConfigValidationError

logger = logging.getLogger(__name__)

# config key -> SweepSpec field
SPEC_KEYS = {
    "materials": "materials",
    "f": "f_values",
    "lambda": "wavelength",
    "H": "H_values",
    "R": "R",
    "a_points": "a_points",
    "outputs": "outputs",
    "threads": "threads",
}
TOLERANCE_KEYS = ("rel_tol", "abs_tol", "max_subdivisions", "m_max", "series_tail_tol")
LIST_KEYS = ("materials", "f", "H", "outputs")
LENGTH_KEYS = ("lambda", "H", "R")
KNOWN_KEYS = tuple(SPEC_KEYS) + TOLERANCE_KEYS

_LENGTH = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([a-zA-Zμµ]+)$")

# key -> (line number or None for command-line overrides, raw value)
Entries = dict[str, tuple[Optional[int], str]]


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    materials: tuple[str, str]
    f_values: list[float] = Field(min_length=1)
    wavelength: float = Field(default=config.DEFAULT_WAVELENGTH, gt=0.0, allow_inf_nan=False)
    H_values: list[float] = Field(min_length=1)
    R: float = Field(default=config.DEFAULT_SPHERE_RADIUS, gt=0.0, allow_inf_nan=False)
    a_points: int = Field(default=64, ge=2)
    outputs: tuple[str, ...] = Field(default=config.OUTPUT_CHOICES, min_length=1)
    settings: QuadratureSettings = QuadratureSettings()
    threads: Optional[int] = Field(default=None, ge=1)

    @field_validator("materials")
    @classmethod
    def _known_materials(cls, names: tuple[str, str]) -> tuple[str, str]:
        for name in names:
            material_from_name(name)
        return tuple(normalize_material_name(name) for name in names)

    @field_validator("f_values")
    @classmethod
    def _fractions(cls, values: list[float]) -> list[float]:
        for f in values:
            if not 0.0 <= f <= 1.0:
                raise ValueError(f"fill fraction {f} outside [0, 1]")
        return sorted(set(values))

    @field_validator("H_values")
    @classmethod
    def _gaps(cls, values: list[float]) -> list[float]:
        for H in values:
            if not H > 0.0:
                raise ValueError(f"gap {H} must be positive")
        return sorted(set(values))

    @field_validator("outputs")
    @classmethod
    def _outputs(cls, values: tuple[str, ...]) -> tuple[str, ...]:
        unknown = [v for v in values if v not in config.OUTPUT_CHOICES]
        if unknown:
            raise ValueError(f"unknown outputs {unknown}; choose from {list(config.OUTPUT_CHOICES)}")
        # canonical order, no duplicates
        return tuple(v for v in config.OUTPUT_CHOICES if v in values)

    @property
    def material_pair(self) -> str:
        return "-".join(self.materials)

    @property
    def high(self) -> DielectricModel:
        return material_from_name(self.materials[0])

    @property
    def low(self) -> DielectricModel:
        return material_from_name(self.materials[1])

    def wants(self, output: str) -> bool:
        return output in self.outputs

    def a_grid(self) -> list[float]:
        """Uniform displacements k/N on [0, 1)."""
        return [k / self.a_points for k in range(self.a_points)]

    def profile(self, f: float) -> LamellarProfile:
        return LamellarProfile(high=self.high, low=self.low, fill_fraction=f, wavelength=self.wavelength)


def parse_length(raw: str, line_number: Optional[int] = None) -> float:
    """
    Convert "100nm", "1 um" or "1.8e-4m" to metres.

    Raises:
        ConfigParseError: No unit, an unknown unit or a malformed number
    """
    match = _LENGTH.match(raw.strip())
    if match is None:
        raise ConfigParseError(f"length {raw!r} needs a number followed by a unit {list(config.LENGTH_UNITS)}", line_number)
    number, unit = match.groups()
    if unit not in config.LENGTH_UNITS:
        raise ConfigParseError(f"unknown length unit {unit!r} in {raw!r}", line_number)
    # decimal scaling keeps "10um" == 10e-6
    return float(Decimal(number).scaleb(config.LENGTH_UNITS[unit]))


def read_config_entries(text: str) -> Entries:
    """
    Split configuration text into raw entries, rejecting unknown and repeated keys.

    Raises:
        ConfigParseError: With the number of the offending line
    """
    entries: Entries = {}
    for line_number, key, value in iter_key_value_lines(text):
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"unknown key {key!r}", line_number)
        if key in entries:
            raise ConfigParseError(f"key {key!r} repeated (first set on line {entries[key][0]})", line_number)
        entries[key] = (line_number, value)
    return entries


def _convert(key: str, raw: str, line_number: Optional[int]) -> Union[str, float, list]:
    if key in LIST_KEYS:
        items = [item.strip() for item in raw.split(",") if item.strip()]
        if key in LENGTH_KEYS:
            return [parse_length(item, line_number) for item in items]
        return items
    if key in LENGTH_KEYS:
        return parse_length(raw, line_number)
    return raw


def build_spec(entries: Entries) -> SweepSpec:
    """
    Validate raw entries into a SweepSpec.

    Raises:
        ConfigParseError: A value cannot be read (e.g. a length without unit)
        ConfigValidationError: A value is read but not acceptable; names the key
    """
    for key, (line_number, _) in entries.items():
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"unknown key {key!r}", line_number)

    values = {key: _convert(key, raw, line_number) for key, (line_number, raw) in entries.items()}
    fields = {SPEC_KEYS[key]: value for key, value in values.items() if key in SPEC_KEYS}
    tolerances = {key: value for key, value in values.items() if key in TOLERANCE_KEYS}

    try:
        fields["settings"] = QuadratureSettings(**tolerances)
    except ValidationError as e:
        error = e.errors()[0]
        raise ConfigValidationError(str(error["loc"][0]), error["msg"]) from e

    field_to_key = {field: key for key, field in SPEC_KEYS.items()}
    try:
        spec = SweepSpec(**fields)
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else "?"
        raise ConfigValidationError(field_to_key.get(field, field), error["msg"]) from e

    logger.debug(f"Sweep spec: {spec.model_dump()}")
    return spec


def parse_config(text: str) -> SweepSpec:
    """Parse and validate a sweep configuration file's text."""
    return build_spec(read_config_entries(text))
