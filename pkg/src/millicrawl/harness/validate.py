"""Model-against-measurement validation with explicit gating.

``validate_all`` recomputes every checked quantity from the configuration and
compares it to the embedded reference data.  ``hard`` rows decide the overall
verdict.  ``report`` rows are shown with the same arithmetic but never gate:
they track quantities the kinematic/point-dipole models are known to
under-resolve, and hiding their misses would defeat the point of validation.

The whole run is deterministic: identical configs produce byte-identical
report tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..convoy import (
    ConvoyConfig,
    convoy_force_profile,
    convoy_step,
    local_phase_lag,
    payload_feasibility,
)
from ..foot import FootDesign, lifting_force_budget, penetration, spike_angle_sweep
from ..gait import crawl_velocity, stride_length
from ..magnetics import (
    ActuationSetup,
    cycle_gradient_extrema,
    height_for_pose_angle,
    orientation_sweep,
    superposed_field,
)
from .config import AppConfig, parse_config
from .references import get_reference
from .tableio import Table


@dataclass(frozen=True)
class ValidationRow:
    """One comparison: computed value, reference band, verdict.

    ``passed`` is None for purely informational rows that carry no band.
    """

    row_id: str
    gating: str  # "hard" | "report"
    computed: float
    reference: str
    passed: bool | None
    note: str = ""

    def line(self) -> str:
        tag = {True: "PASS", False: "FAIL", None: "INFO"}[self.passed]
        body = f"[{tag}] {self.gating:<6} {self.row_id}: {self.computed:.6g} vs {self.reference}"
        return body + (f"  ({self.note})" if self.note else "")


@dataclass
class ValidationReport:
    rows: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows if r.gating == "hard")

    def lines(self) -> list:
        out = [r.line() for r in self.rows]
        n_hard = sum(1 for r in self.rows if r.gating == "hard")
        n_fail = sum(1 for r in self.rows if r.gating == "hard" and not r.passed)
        verdict = "PASS" if self.passed else "FAIL"
        out.append(f"overall: {verdict} ({n_hard - n_fail}/{n_hard} hard gates)")
        return out

    def to_table(self) -> Table:
        cols = ["row_id", "gating", "computed", "reference", "passed", "note"]
        rows = [
            {
                "row_id": r.row_id,
                "gating": r.gating,
                "computed": float(r.computed),
                "reference": r.reference,
                "passed": "" if r.passed is None else r.passed,
                "note": r.note,
            }
            for r in self.rows
        ]
        return Table(cols, rows)


def _band(key: str) -> str:
    d = get_reference(key)
    if d.bound == "upper":
        return f"< {d.value:g} {d.unit}".rstrip()
    if d.bound == "lower":
        return f"> {d.value:g} {d.unit}".rstrip()
    if d.tol_abs is not None:
        return f"{d.value:g} +- {d.tol_abs:g} {d.unit}".rstrip()
    return f"{d.value:g} {d.unit} +- {d.tol_rel:.0%}".rstrip()


def _ref_row(row_id: str, key: str, computed: float, note: str = "") -> ValidationRow:
    d = get_reference(key)
    return ValidationRow(
        row_id=row_id,
        gating=d.gating,
        computed=float(computed),
        reference=_band(key),
        passed=d.check(float(computed)),
        note=note,
    )


def _bool_row(row_id: str, ok: bool, reference: str, note: str = "") -> ValidationRow:
    return ValidationRow(row_id, "hard", float(bool(ok)), reference, bool(ok), note)


def _info_row(row_id: str, computed: float, reference: str, note: str = "") -> ValidationRow:
    return ValidationRow(row_id, "report", float(computed), reference, None, note)


def _variant(setup: ActuationSetup, height_mm: float) -> ActuationSetup:
    return ActuationSetup(
        static_moment=setup.static_moment,
        rotor_moment=setup.rotor_moment,
        static_offset_mm=setup.static_offset_mm,
        rotor_height_mm=height_mm,
    )


def validate_all(config: AppConfig | None = None) -> ValidationReport:
    """Recompute and gate every validated quantity; returns the full report."""
    cfg = parse_config(None) if config is None else config
    setup, unit = cfg.setup, cfg.unit
    rows: list = []

    # field at the workspace centre
    rows.append(_ref_row("static_flux", "static_flux_mt", setup.static_field_mt()))
    rows.append(_ref_row("rotor_flux_max", "rotor_flux_max_mt", setup.rotor_field_max_mt()))
    dev = 0.0
    for a in (0.0, 45.0, 90.0, 170.0, 260.0, 305.0):
        cf = setup.center_field_mt(a)
        dev = max(dev, float(np.abs(superposed_field(setup, (0, 0, 0), a) - cf).max()
                             / np.abs(cf).max()))
    rows.append(
        _bool_row(
            "superposition_consistency",
            dev < 0.02,
            "closed form within 2%",
            f"max rel dev {dev:.2e}",
        )
    )
    ext = cycle_gradient_extrema(setup, step_deg=5.0)
    rows.append(
        _ref_row(
            "cycle_gradient",
            "cycle_gradient_bound_tpm",
            ext["max_magnitude_gradient"],
            "max |d|B|/dx_k| over the cycle",
        )
    )
    rows.append(
        _info_row(
            "cycle_gradient_tensor",
            ext["max_tensor_component"],
            "(no band)",
            "max |dB_i/dx_j|; point-dipole ceiling, scales with the flux overshoot",
        )
    )

    # orientation envelope
    az, el, _ = orientation_sweep(setup, np.arange(0.0, 360.0, 2.0))
    rows.append(_ref_row("azimuth_min", "azimuth_min_deg", float(az.min())))
    rows.append(_ref_row("azimuth_max", "azimuth_max_deg", float(az.max())))
    rows.append(_ref_row("elevation_amplitude", "elevation_amplitude_deg", float(el.max())))

    # rotor-height variants
    lo, hi = _variant(setup, 182.0), _variant(setup, 238.0)
    rows.append(_ref_row("pose_angle_h182", "pose_angle_h182_deg", lo.pose_angle_max_deg()))
    rows.append(_ref_row("rotor_flux_h182", "rotor_flux_h182_mt", lo.rotor_field_max_mt()))
    rows.append(_ref_row("pose_angle_h238", "pose_angle_h238_deg", hi.pose_angle_max_deg()))
    rows.append(_ref_row("rotor_flux_h238", "rotor_flux_h238_mt", hi.rotor_field_max_mt()))

    # stride scaling
    s41 = stride_length(lo, unit)
    s31 = stride_length(_variant(setup, height_for_pose_angle(setup, 31.0)), unit)
    s22 = stride_length(hi, unit)
    rows.append(_ref_row("stride_pose41", "stride_pose41_mm", s41))
    rows.append(_ref_row("stride_ratio_41_31", "stride_ratio_41_31", s41 / s31))
    rows.append(_ref_row("stride_ratio_41_22", "stride_ratio_41_22", s41 / s22))

    # speed response at the measured reference stride
    ref_stride = get_reference("stride_pose41_mm").value
    v_lo = crawl_velocity(ref_stride, 0.17)
    v_hi = crawl_velocity(ref_stride, 1.7)
    rows.append(_ref_row("speed_f017", "speed_f017_mms", v_lo))
    rows.append(_ref_row("speed_f17", "speed_f17_mms", v_hi))
    rows.append(
        _bool_row(
            "speed_linearity",
            abs(v_hi / v_lo - 10.0) < 1e-9,
            "speed ratio = frequency ratio",
        )
    )

    # lifting budget
    budget = lifting_force_budget(setup, unit)
    rows.append(_ref_row("torque_peak", "torque_mn_mm", budget.torque_mn_mm))
    rows.append(_ref_row("tip_force", "tip_force_mn", budget.tip_force_mn))
    rows.append(
        _ref_row(
            "lift_requirement",
            "required_tip_force_mn",
            budget.tip_force_mn,
            "torque-driven tip force against the breakout threshold",
        )
    )
    rows.append(
        _info_row(
            "gradient_pull_needed",
            budget.gradient_needed_tpm,
            "(no band)",
            "gradient that pure pulling would need; cycle max is "
            f"{budget.gradient_available_tpm:.4f} T/m",
        )
    )

    # foot geometry
    foot = cfg.foot
    pens = {
        a: penetration(_angle_variant(foot, a)) for a in (15.0, 30.0, 45.0)
    }
    rows.append(
        _bool_row(
            "foot_depth_ordering",
            pens[15.0].depth_mm < pens[30.0].depth_mm < pens[45.0].depth_mm,
            "depth strictly increasing over 15/30/45 deg",
            "depths "
            + "/".join(f"{pens[a].depth_mm:.4f}" for a in (15.0, 30.0, 45.0)),
        )
    )
    rows.append(
        _bool_row(
            "foot_gap_pattern",
            pens[15.0].gap_present and pens[30.0].gap_present and not pens[45.0].gap_present,
            "base-arrest gaps at 15/30 deg, none at 45 deg",
        )
    )
    pts, best_angle = spike_angle_sweep(design=foot)
    best = {p.spike_angle_deg: p.result for p in pts}[best_angle]
    rows.append(_ref_row("foot_best_angle", "foot_best_angle_deg", best_angle))
    rows.append(
        _ref_row(
            "foot_depth_opt",
            "foot_depth_opt_mm",
            best.depth_mm,
            "rigid-sink cap: pitch * sin(roll); grain rearrangement not modelled",
        )
    )
    rows.append(
        _ref_row(
            "foot_area_opt",
            "foot_area_opt_mm2",
            best.contact_area_mm2,
            "cross-section below the support line at the optimum",
        )
    )

    # convoy force scaling
    profs = {n: convoy_force_profile(setup, n, cfg.convoy.spacing_mm) for n in (1, 2, 3, 4)}
    peaks = {n: p.peak_mn for n, p in profs.items()}
    means = {n: p.mean_mn for n, p in profs.items()}
    rows.append(
        _bool_row(
            "convoy_peak_sublinear",
            all(peaks[n] < n * peaks[1] for n in (2, 3, 4)),
            "peak force below n * single-unit peak",
        )
    )
    rows.append(
        _bool_row(
            "convoy_mean_increasing",
            means[1] < means[2] < means[3] < means[4],
            "cycle-mean force strictly increasing in n",
        )
    )
    rows.append(_ref_row("convoy_peak2_ratio", "convoy_peak2_ratio", peaks[2] / peaks[1]))
    rows.append(_ref_row("convoy_peak3_ratio", "convoy_peak3_ratio", peaks[3] / peaks[1]))

    # linked crawling
    tr = convoy_step(setup, cfg.convoy, cycles=2, step_deg=3.0)
    sep = tr.separations()
    rows.append(
        _bool_row(
            "convoy_stoppers",
            bool(
                sep.min() >= cfg.convoy.stopper_min_mm - 1e-9
                and sep.max() <= cfg.convoy.max_separation_mm + 1e-9
            ),
            f"separations within [{cfg.convoy.stopper_min_mm:g}, "
            f"{cfg.convoy.max_separation_mm:g}] mm",
            f"range [{sep.min():.3f}, {sep.max():.3f}] mm",
        )
    )
    solo = 2 * stride_length(setup, unit)
    pace_ok = all(abs(d - solo) <= 0.01 * solo for d in tr.unit_displacements())
    rows.append(
        _bool_row("convoy_pace", pace_ok, "per-unit advance within 1% of solo stride")
    )

    # phase lags across the workspace
    offs = (0.0, 2.0, 5.0, 10.0, 20.0)
    lags = [local_phase_lag(setup, o) for o in offs]
    rows.append(
        _bool_row(
            "phase_lag_monotone",
            all(b > a for a, b in zip(lags, lags[1:])),
            "lag strictly increasing with offset",
            "lags " + "/".join(f"{v:g}" for v in lags),
        )
    )
    rows.append(
        _ref_row(
            "max_phase_lag",
            "max_phase_lag_deg",
            max(abs(v) for v in lags),
            "field model only; measured value includes substrate slip",
        )
    )

    # payload towing
    pay = payload_feasibility(setup, cfg.convoy)
    rows.append(
        _bool_row(
            "payload_feasible",
            pay.feasible,
            "mean convoy force above payload drag",
            f"margin {pay.margin:.2f}x",
        )
    )

    return ValidationReport(rows=rows)


def _angle_variant(foot: FootDesign, angle: float) -> FootDesign:
    return FootDesign(
        spike_length_mm=foot.spike_length_mm,
        spike_pitch_mm=foot.spike_pitch_mm,
        base_height_mm=foot.base_height_mm,
        spike_angle_deg=angle,
        tip_width_mm=foot.tip_width_mm,
        n_spikes=foot.n_spikes,
    )
