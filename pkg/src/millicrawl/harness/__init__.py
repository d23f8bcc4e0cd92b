"""Run harness: configuration, reference data, sweeps, validation, CLI."""

from .config import AppConfig, ConfigError, DriveParams, load_config, parse_config
from .references import REFERENCES, ReferenceDatum, get_reference
from .sweeps import SWEEP_KINDS, run_sweep
from .tableio import Table, read_csv, read_json, write_csv, write_json
from .validate import ValidationReport, ValidationRow, validate_all

__all__ = [
    "AppConfig",
    "ConfigError",
    "DriveParams",
    "REFERENCES",
    "ReferenceDatum",
    "SWEEP_KINDS",
    "Table",
    "ValidationReport",
    "ValidationRow",
    "get_reference",
    "load_config",
    "parse_config",
    "read_csv",
    "read_json",
    "run_sweep",
    "validate_all",
    "write_csv",
    "write_json",
]
