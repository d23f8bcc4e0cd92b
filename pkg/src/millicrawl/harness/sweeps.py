"""Deterministic parameter sweeps exported as row tables.

Every sweep is a pure function of the configuration: fixed grids, no
randomness, so repeated runs produce byte-identical exports.
"""

from __future__ import annotations

import numpy as np

from ..convoy import convoy_force_profile, local_phase_lag
from ..foot import FootDesign, penetration
from ..gait import crawl_velocity, stride_length
from ..magnetics import (
    ActuationSetup,
    field_orientation,
    field_sample,
    magnitude_gradient,
)
from .config import AppConfig, parse_config
from .references import get_reference
from .tableio import Table

SWEEP_KINDS = ("field", "pose", "stride", "speed", "foot", "convoy", "phase")


def run_sweep(kind: str, config: AppConfig | None = None) -> Table:
    """Run one named sweep and return its table.

    Kinds: ``field`` (centre field over a drive cycle), ``pose`` and
    ``stride`` (rotor-height series), ``speed`` (frequency series at the
    reference stride), ``foot`` (spike-angle series), ``convoy`` (force
    scaling with unit count), ``phase`` (lag over planar offset).
    """
    if config is None:
        config = parse_config(None)
    try:
        fn = _SWEEPS[kind]
    except KeyError:
        raise ValueError(f"unknown sweep kind {kind!r}; pick from {SWEEP_KINDS}") from None
    return fn(config)


def _field_sweep(cfg: AppConfig) -> Table:
    cols = [
        "alpha_deg", "bx_mt", "by_mt", "bz_mt", "magnitude_mt",
        "azimuth_deg", "elevation_deg",
        "dmag_dx_tpm", "dmag_dy_tpm", "dmag_dz_tpm",
    ]
    rows = []
    for a in np.arange(0.0, 360.0, 5.0):
        s = field_sample(cfg.setup, (0.0, 0.0, 0.0), float(a))
        o = field_orientation(s.b_mt)
        g = magnitude_gradient(s)
        rows.append({
            "alpha_deg": float(a),
            "bx_mt": float(s.b_mt[0]),
            "by_mt": float(s.b_mt[1]),
            "bz_mt": float(s.b_mt[2]),
            "magnitude_mt": o.magnitude_mt,
            "azimuth_deg": o.azimuth_deg,
            "elevation_deg": o.elevation_deg,
            "dmag_dx_tpm": float(g[0]),
            "dmag_dy_tpm": float(g[1]),
            "dmag_dz_tpm": float(g[2]),
        })
    return Table(cols, rows)


def _height_series(cfg: AppConfig):
    for h in np.arange(140.0, 262.0, 2.0):
        yield ActuationSetup(
            static_moment=cfg.setup.static_moment,
            rotor_moment=cfg.setup.rotor_moment,
            static_offset_mm=cfg.setup.static_offset_mm,
            rotor_height_mm=float(h),
        )


def _pose_sweep(cfg: AppConfig) -> Table:
    cols = ["rotor_height_mm", "rotor_flux_max_mt", "pose_angle_max_deg", "azimuth_swing_deg"]
    rows = [
        {
            "rotor_height_mm": s.rotor_height_mm,
            "rotor_flux_max_mt": s.rotor_field_max_mt(),
            "pose_angle_max_deg": s.pose_angle_max_deg(),
            "azimuth_swing_deg": s.azimuth_swing_deg(),
        }
        for s in _height_series(cfg)
    ]
    return Table(cols, rows)


def _stride_sweep(cfg: AppConfig) -> Table:
    cols = ["rotor_height_mm", "pose_angle_max_deg", "stride_mm"]
    rows = [
        {
            "rotor_height_mm": s.rotor_height_mm,
            "pose_angle_max_deg": s.pose_angle_max_deg(),
            "stride_mm": stride_length(s, cfg.unit),
        }
        for s in _height_series(cfg)
    ]
    return Table(cols, rows)


def _speed_sweep(cfg: AppConfig) -> Table:
    # speeds at the measured reference stride: this sweep validates the
    # one-stride-per-cycle frequency response, not the stride model
    ref = get_reference("stride_pose41_mm").value
    model = stride_length(cfg.setup, cfg.unit)
    cols = ["frequency_hz", "speed_mms", "model_speed_mms"]
    rows = [
        {
            "frequency_hz": float(f),
            "speed_mms": crawl_velocity(ref, float(f)),
            "model_speed_mms": crawl_velocity(model, float(f)),
        }
        for f in (0.17, 0.25, 0.5, 0.85, 1.0, 1.25, 1.5, 1.7)
    ]
    return Table(cols, rows)


def _foot_sweep(cfg: AppConfig) -> Table:
    cols = ["spike_angle_deg", "depth_mm", "contact_area_mm2", "roll_deg",
            "gap_present", "base_clearance_mm"]
    rows = []
    base = cfg.foot
    for ang in np.arange(10.0, 60.0 + 1e-9, 1.0):
        d = FootDesign(
            spike_length_mm=base.spike_length_mm,
            spike_pitch_mm=base.spike_pitch_mm,
            base_height_mm=base.base_height_mm,
            spike_angle_deg=float(ang),
            tip_width_mm=base.tip_width_mm,
            n_spikes=base.n_spikes,
        )
        r = penetration(d)
        rows.append({
            "spike_angle_deg": float(ang),
            "depth_mm": r.depth_mm,
            "contact_area_mm2": r.contact_area_mm2,
            "roll_deg": r.roll_deg,
            "gap_present": r.gap_present,
            "base_clearance_mm": r.base_clearance_mm,
        })
    return Table(cols, rows)


def _convoy_sweep(cfg: AppConfig) -> Table:
    cols = ["n_units", "peak_mn", "mean_mn", "peak_ratio", "mean_ratio"]
    rows = []
    base_peak = base_mean = None
    for n in (1, 2, 3, 4):
        p = convoy_force_profile(cfg.setup, n, cfg.convoy.spacing_mm)
        if base_peak is None:
            base_peak, base_mean = p.peak_mn, p.mean_mn
        rows.append({
            "n_units": n,
            "peak_mn": p.peak_mn,
            "mean_mn": p.mean_mn,
            "peak_ratio": p.peak_mn / base_peak,
            "mean_ratio": p.mean_mn / base_mean,
        })
    return Table(cols, rows)


def _phase_sweep(cfg: AppConfig) -> Table:
    cols = ["offset_mm", "lag_deg"]
    rows = [
        {"offset_mm": float(o), "lag_deg": local_phase_lag(cfg.setup, float(o))}
        for o in (-20.0, -10.0, -5.0, -2.0, 0.0, 2.0, 5.0, 10.0, 20.0)
    ]
    return Table(cols, rows)


_SWEEPS = {
    "field": _field_sweep,
    "pose": _pose_sweep,
    "stride": _stride_sweep,
    "speed": _speed_sweep,
    "foot": _foot_sweep,
    "convoy": _convoy_sweep,
    "phase": _phase_sweep,
}
