"""Embedded reference data for model validation.

Every datum carries its measurement context and how strictly the model is
held to it.  ``hard`` rows gate validation; ``report`` rows are printed for
comparison but known to sit outside what a point-dipole + rigid-sink model
can reproduce (finite magnet size, substrate mechanics), so they never gate.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ReferenceDatum:
    """One measured or specified quantity with its acceptance band.

    Exactly one of ``tol_rel`` / ``tol_abs`` / ``bound`` applies.  ``bound``
    is "upper" or "lower": the computed value must stay on the allowed side.
    """

    key: str
    value: float
    unit: str
    description: str
    provenance: str
    gating: str = "hard"  # "hard" | "report"
    tol_rel: float | None = None
    tol_abs: float | None = None
    bound: str | None = None

    def check(self, computed: float) -> bool:
        if self.bound == "upper":
            return computed < self.value
        if self.bound == "lower":
            return computed > self.value
        if self.tol_abs is not None:
            return abs(computed - self.value) <= self.tol_abs
        if self.tol_rel is not None:
            return abs(computed - self.value) <= self.tol_rel * abs(self.value)
        raise ValueError(f"reference {self.key} has no acceptance band")


_BENCH = "bench measurement on the three-magnet setup"
_ROBOT = "bench measurement on fabricated units"
_SPEC = "design requirement"

_DATA = [
    ReferenceDatum(
        "static_flux_mt", 4.7, "mT",
        "flux density at the workspace centre, static pair alone",
        _BENCH, tol_rel=0.02,
    ),
    ReferenceDatum(
        "rotor_flux_max_mt", 3.6, "mT",
        "peak rotating-magnet flux at the centre over a cycle, default height",
        _BENCH, tol_rel=0.10,
    ),
    ReferenceDatum(
        "cycle_gradient_bound_tpm", 0.06, "T/m",
        "ceiling on field-magnitude gradient components at the centre over a cycle",
        _BENCH, bound="upper",
    ),
    ReferenceDatum(
        "azimuth_min_deg", 67.0, "deg",
        "lower end of the field-azimuth sway over a cycle",
        _BENCH, tol_abs=2.0,
    ),
    ReferenceDatum(
        "azimuth_max_deg", 112.0, "deg",
        "upper end of the field-azimuth sway over a cycle",
        _BENCH, tol_abs=2.0,
    ),
    ReferenceDatum(
        "elevation_amplitude_deg", 39.0, "deg",
        "field-elevation amplitude over a cycle, default height",
        _BENCH, tol_abs=2.0,
    ),
    ReferenceDatum(
        "pose_angle_h182_deg", 41.0, "deg",
        "peak pose angle with the rotating magnet lowered to 182 mm",
        _BENCH, tol_abs=3.0,
    ),
    ReferenceDatum(
        "pose_angle_h238_deg", 22.0, "deg",
        "peak pose angle with the rotating magnet raised to 238 mm",
        _BENCH, tol_abs=3.0,
    ),
    ReferenceDatum(
        "rotor_flux_h182_mt", 4.1, "mT",
        "peak rotating-magnet flux at 182 mm height",
        _BENCH, tol_rel=0.10,
    ),
    ReferenceDatum(
        "rotor_flux_h238_mt", 1.9, "mT",
        "peak rotating-magnet flux at 238 mm height",
        _BENCH, tol_rel=0.10,
    ),
    ReferenceDatum(
        "stride_pose41_mm", 2.5, "mm",
        "per-cycle stride at the 41-degree pose setting",
        _ROBOT, tol_rel=0.20,
    ),
    ReferenceDatum(
        "stride_ratio_41_31", 1.6, "",
        "stride at pose 41 deg over stride at pose 31 deg",
        _ROBOT, tol_rel=0.20,
    ),
    ReferenceDatum(
        "stride_ratio_41_22", 2.2, "",
        "stride at pose 41 deg over stride at pose 22 deg",
        _ROBOT, tol_rel=0.20,
    ),
    ReferenceDatum(
        "speed_f017_mms", 0.4, "mm/s",
        "crawl speed at 0.17 Hz drive",
        _ROBOT, tol_rel=0.10,
    ),
    ReferenceDatum(
        "speed_f17_mms", 4.2, "mm/s",
        "crawl speed at 1.7 Hz drive",
        _ROBOT, tol_rel=0.10,
    ),
    ReferenceDatum(
        "torque_mn_mm", 10.0, "mN*mm",
        "peak field torque on one unit's onboard moment",
        _BENCH, tol_rel=0.20,
    ),
    ReferenceDatum(
        "tip_force_mn", 3.0, "mN",
        "foot-lifting force from peak torque over the body length",
        _BENCH, tol_rel=0.20,
    ),
    ReferenceDatum(
        "required_tip_force_mn", 0.1, "mN",
        "minimum force needed to break a foot out of the substrate",
        _SPEC, bound="lower",
    ),
    # -- report-only context ------------------------------------------------
    ReferenceDatum(
        "foot_depth_opt_mm", 0.84, "mm",
        "penetration depth at the optimised spike angle",
        "substrate indentation measurement; includes grain rearrangement the "
        "rigid-sink model excludes",
        gating="report", tol_rel=0.25,
    ),
    ReferenceDatum(
        "foot_area_opt_mm2", 0.27, "mm^2",
        "engaged cross-section at the optimised spike angle",
        "substrate indentation measurement; includes grain rearrangement the "
        "rigid-sink model excludes",
        gating="report", tol_rel=0.30,
    ),
    ReferenceDatum(
        "foot_best_angle_deg", 41.0, "deg",
        "spike angle maximising penetration depth",
        "design sweep over fabricated feet",
        gating="report", tol_abs=5.0,
    ),
    ReferenceDatum(
        "flat_foot_force_mn", 0.27, "mN",
        "anchoring force with flat (spikeless) feet",
        _ROBOT, gating="report", tol_rel=0.20,
    ),
    ReferenceDatum(
        "spiked_foot_force_mn", 0.93, "mN",
        "anchoring force amplitude with spiked feet (model calibration input)",
        _ROBOT, gating="report", tol_rel=0.20,
    ),
    ReferenceDatum(
        "convoy_peak2_ratio", 1.6, "",
        "two-unit peak force over single-unit peak",
        _ROBOT, gating="report", tol_rel=0.20,
    ),
    ReferenceDatum(
        "convoy_peak3_ratio", 1.8, "",
        "three-unit peak force over single-unit peak",
        _ROBOT, gating="report", tol_rel=0.20,
    ),
    ReferenceDatum(
        "max_phase_lag_deg", 24.0, "deg",
        "largest orientation phase lag observed across the workspace",
        "video tracking; includes substrate slip the field model excludes",
        gating="report", tol_rel=1.0,
    ),
    ReferenceDatum(
        "gradient_pull_vertical_tpm", 0.35, "T/m",
        "field gradient needed to drag a unit up a vertical wall",
        _SPEC, gating="report",
    ),
    ReferenceDatum(
        "gradient_pull_inverted_tpm", 0.6, "T/m",
        "field gradient needed to hold a unit inverted",
        _SPEC, gating="report",
    ),
    ReferenceDatum(
        "payload_mass_mg", 70.0, "mg",
        "payload towed by a three-unit convoy",
        _ROBOT, gating="report",
    ),
    ReferenceDatum(
        "payload_distance_mm", 250.0, "mm",
        "tether length over which the payload was towed",
        _ROBOT, gating="report",
    ),
]

REFERENCES = {d.key: d for d in _DATA}


def get_reference(key: str) -> ReferenceDatum:
    try:
        return REFERENCES[key]
    except KeyError:
        raise KeyError(f"unknown reference datum: {key!r}") from None
