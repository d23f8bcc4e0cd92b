"""JSON run configuration with strict validation.

A config file is a JSON object of sections; every key carries its unit as a
suffix.  Unknown sections or keys are rejected with their full dotted path,
so typos fail loudly instead of silently keeping a default.  All keys are
optional: defaults are the standard setup.

Example::

    {
      "setup": {"rotor_height_mm": 182.0},
      "drive": {"frequency_hz": 1.7, "beta_deg": 15.0},
      "convoy": {"n_units": 3, "spacing_mm": 5.0}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..convoy import ConvoyConfig
from ..foot import FootDesign
from ..gait import UnitGeometry
from ..magnetics import ActuationSetup


class ConfigError(ValueError):
    """Malformed configuration: unknown key, wrong type, or bad value."""


@dataclass(frozen=True)
class DriveParams:
    """Drive rotation rate and steering angle."""

    frequency_hz: float = 1.0
    beta_deg: float = 0.0

    def __post_init__(self):
        if self.frequency_hz <= 0:
            raise ValueError("frequency_hz must be positive")


@dataclass(frozen=True)
class AppConfig:
    """Validated configuration bundle used across the harness."""

    setup: ActuationSetup
    unit: UnitGeometry
    foot: FootDesign
    convoy: ConvoyConfig
    drive: DriveParams


_NUMERIC = (int, float)

# section -> (target constructor, {json key: (ctor field, type)})
_SCHEMA = {
    "setup": {
        "static_moment_am2": ("static_moment", _NUMERIC),
        "rotor_moment_am2": ("rotor_moment", _NUMERIC),
        "static_offset_mm": ("static_offset_mm", _NUMERIC),
        "rotor_height_mm": ("rotor_height_mm", _NUMERIC),
    },
    "unit": {
        "length_mm": ("length_mm", _NUMERIC),
        "mass_mg": ("mass_mg", _NUMERIC),
        "moment_am2": ("moment_am2", _NUMERIC),
    },
    "foot": {
        "spike_length_mm": ("spike_length_mm", _NUMERIC),
        "spike_pitch_mm": ("spike_pitch_mm", _NUMERIC),
        "base_height_mm": ("base_height_mm", _NUMERIC),
        "spike_angle_deg": ("spike_angle_deg", _NUMERIC),
        "tip_width_mm": ("tip_width_mm", _NUMERIC),
        "n_spikes": ("n_spikes", int),
    },
    "convoy": {
        "n_units": ("n_units", int),
        "spacing_mm": ("spacing_mm", _NUMERIC),
        "slack_mm": ("slack_mm", _NUMERIC),
        "stopper_min_mm": ("stopper_min_mm", _NUMERIC),
    },
    "drive": {
        "frequency_hz": ("frequency_hz", _NUMERIC),
        "beta_deg": ("beta_deg", _NUMERIC),
    },
}

_BUILDERS = {
    "setup": ActuationSetup,
    "unit": UnitGeometry,
    "foot": FootDesign,
    "convoy": ConvoyConfig,
    "drive": DriveParams,
}


def _build_section(name: str, data: dict):
    schema = _SCHEMA[name]
    if not isinstance(data, dict):
        raise ConfigError(f"section {name!r} must be an object")
    kwargs = {}
    for key, value in data.items():
        if key not in schema:
            raise ConfigError(f"unknown key {name}.{key}")
        field_name, types = schema[key]
        if isinstance(value, bool) or not isinstance(value, types):
            want = "integer" if types is int else "number"
            raise ConfigError(f"{name}.{key} must be a {want}, got {value!r}")
        kwargs[field_name] = value
    try:
        return _BUILDERS[name](**kwargs)
    except ValueError as e:
        raise ConfigError(f"invalid value in section {name!r}: {e}") from e


def parse_config(data: dict | None) -> AppConfig:
    """Validate a config mapping and build the parameter objects."""
    data = {} if data is None else data
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be an object")
    for key in data:
        if key not in _SCHEMA:
            raise ConfigError(f"unknown section {key!r}")
    sections = {name: _build_section(name, data.get(name, {})) for name in _SCHEMA}
    cfg = AppConfig(**sections)
    # cross-section sanity: convoy units share the unit geometry
    if cfg.convoy.geometry != cfg.unit:
        object.__setattr__(
            cfg,
            "convoy",
            ConvoyConfig(
                n_units=cfg.convoy.n_units,
                spacing_mm=cfg.convoy.spacing_mm,
                slack_mm=cfg.convoy.slack_mm,
                stopper_min_mm=cfg.convoy.stopper_min_mm,
                geometry=cfg.unit,
            ),
        )
    return cfg


def load_config(path=None) -> AppConfig:
    """Load and validate a JSON config file; ``None`` gives the defaults."""
    if path is None:
        return parse_config(None)
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"not valid JSON: {e}") from e
    return parse_config(data)
