"""Acceptance criteria, one test per criterion.

Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail line per
criterion.  Report-only criteria (prefixed ``report``) print their comparison
and never gate: they cover quantities outside what the shipped models
resolve, and their misses are part of the record, not something to tune away.
"""

import json
import math

import numpy as np
import pytest

from millicrawl.convoy import (
    ConvoyConfig,
    convoy_force_profile,
    convoy_step,
    local_phase_lag,
    payload_feasibility,
)
from millicrawl.foot import FootDesign, lifting_force_budget, penetration, spike_angle_sweep
from millicrawl.gait import UnitGeometry, crawl_velocity, step_simulate, stride_length
from millicrawl.harness.sweeps import run_sweep
from millicrawl.harness.tableio import dumps_json, read_csv, write_csv
from millicrawl.harness.validate import validate_all
from millicrawl.magnetics import (
    ActuationSetup,
    cycle_gradient_extrema,
    height_for_pose_angle,
    orientation_sweep,
    superposed_field,
)
from millicrawl.teleop.session import SimSession, load_recording, replay, save_recording

SETUP = ActuationSetup()
GEO = UnitGeometry()


def _report(name: str, computed, reference: str, ok: bool, note: str = ""):
    verdict = "PASS" if ok else "FAIL"
    extra = f"  ({note})" if note else ""
    print(f"[{verdict}] report-only {name}: {computed:.6g} vs {reference}{extra}")


# -- field model ------------------------------------------------------------


def test_center_bias_flux_within_2pct():
    assert SETUP.static_field_mt() == pytest.approx(4.7, rel=0.02)


def test_rotor_peak_flux_within_10pct():
    assert SETUP.rotor_field_max_mt() == pytest.approx(3.6, rel=0.10)


def test_superposition_matches_closed_form_within_2pct():
    for a in (0.0, 30.0, 90.0, 145.0, 210.0, 330.0):
        b_cf = SETUP.center_field_mt(a)
        b_sum = superposed_field(SETUP, (0.0, 0.0, 0.0), a)
        assert np.abs(b_sum - b_cf).max() <= 0.02 * np.abs(b_cf).max()


def test_cycle_magnitude_gradient_below_0_06_tpm():
    ext = cycle_gradient_extrema(SETUP, step_deg=5.0)
    assert ext["max_magnitude_gradient"] < 0.06


def test_report_cycle_gradient_full_tensor():
    ext = cycle_gradient_extrema(SETUP, step_deg=5.0)
    _report(
        "cycle gradient, full Jacobian ceiling",
        ext["max_tensor_component"],
        "0.06 T/m",
        ext["max_tensor_component"] < 0.06,
        "point-dipole ceiling carries the same overshoot as the peak flux",
    )


# -- orientation envelope ---------------------------------------------------


def test_azimuth_range_within_2deg():
    az, _, _ = orientation_sweep(SETUP, np.arange(0.0, 360.0, 1.0))
    assert az.min() == pytest.approx(67.0, abs=2.0)
    assert az.max() == pytest.approx(112.0, abs=2.0)


def test_elevation_range_within_2deg():
    _, el, _ = orientation_sweep(SETUP, np.arange(0.0, 360.0, 1.0))
    assert el.max() == pytest.approx(39.0, abs=2.0)
    assert el.min() == pytest.approx(-39.0, abs=2.0)


# -- rotor-height variants --------------------------------------------------


def test_pose_angle_at_182mm_within_3deg():
    assert ActuationSetup(rotor_height_mm=182.0).pose_angle_max_deg() == pytest.approx(
        41.0, abs=3.0
    )


def test_pose_angle_at_238mm_within_3deg():
    assert ActuationSetup(rotor_height_mm=238.0).pose_angle_max_deg() == pytest.approx(
        22.0, abs=3.0
    )


def test_rotor_flux_at_182mm_within_10pct():
    assert ActuationSetup(rotor_height_mm=182.0).rotor_field_max_mt() == pytest.approx(
        4.1, rel=0.10
    )


def test_rotor_flux_at_238mm_within_10pct():
    assert ActuationSetup(rotor_height_mm=238.0).rotor_field_max_mt() == pytest.approx(
        1.9, rel=0.10
    )


# -- stride and speed -------------------------------------------------------


def test_stride_at_pose41_within_20pct():
    s41 = stride_length(ActuationSetup(rotor_height_mm=182.0), GEO)
    assert s41 == pytest.approx(2.5, rel=0.20)


def test_stride_ratio_41_over_31_within_20pct():
    s41 = stride_length(ActuationSetup(rotor_height_mm=182.0), GEO)
    h31 = height_for_pose_angle(SETUP, 31.0)
    s31 = stride_length(ActuationSetup(rotor_height_mm=h31), GEO)
    assert s41 / s31 == pytest.approx(1.6, rel=0.20)


def test_stride_ratio_41_over_22_within_20pct():
    s41 = stride_length(ActuationSetup(rotor_height_mm=182.0), GEO)
    s22 = stride_length(ActuationSetup(rotor_height_mm=238.0), GEO)
    assert s41 / s22 == pytest.approx(2.2, rel=0.20)


def test_speed_at_0_17hz_within_10pct():
    assert crawl_velocity(2.5, 0.17) == pytest.approx(0.4, rel=0.10)


def test_speed_at_1_7hz_within_10pct():
    assert crawl_velocity(2.5, 1.7) == pytest.approx(4.2, rel=0.10)


def test_speed_linear_in_frequency():
    v = [crawl_velocity(2.5, f) for f in (0.17, 0.34, 0.85, 1.7)]
    for a, b, fa, fb in zip(v, v[1:], (0.17, 0.34, 0.85), (0.34, 0.85, 1.7)):
        assert b / a == pytest.approx(fb / fa, rel=1e-9)


def test_simulated_cycle_displacement_matches_stride_within_1pct():
    tr = step_simulate(SETUP, GEO, beta_deg=0.0, cycles=1, step_deg=1.0)
    want = stride_length(SETUP, GEO)
    assert tr.displacement_mm[0] == pytest.approx(want, rel=0.01)
    assert abs(tr.displacement_mm[1]) < 0.01 * want


def test_steering_rotates_crawl_direction():
    for beta in (25.0, -60.0, 150.0):
        tr = step_simulate(SETUP, GEO, beta_deg=beta, cycles=1, step_deg=1.0)
        got = math.degrees(math.atan2(tr.displacement_mm[1], tr.displacement_mm[0]))
        diff = (got - beta + 180.0) % 360.0 - 180.0
        assert abs(diff) < 1.0


# -- foot geometry ----------------------------------------------------------


def test_penetration_depth_strictly_increasing_15_30_45():
    d = [penetration(FootDesign(spike_angle_deg=a)).depth_mm for a in (15.0, 30.0, 45.0)]
    assert d[0] < d[1] < d[2]


def test_base_gap_at_15_and_30_none_at_45():
    g = {a: penetration(FootDesign(spike_angle_deg=a)).gap_present for a in (15.0, 30.0, 45.0)}
    assert g[15.0] is True and g[30.0] is True and g[45.0] is False


def test_report_spike_angle_optimum_in_band():
    _, best = spike_angle_sweep()
    _report("spike-angle optimum", best, "41 deg, band [36, 46]", 36.0 <= best <= 46.0)
    assert True


def test_report_penetration_depth_at_optimum():
    pts, best = spike_angle_sweep()
    depth = {p.spike_angle_deg: p.result.depth_mm for p in pts}[best]
    ok = abs(depth - 0.84) <= 0.25 * 0.84
    _report(
        "penetration depth at optimum",
        depth,
        "0.84 mm +- 25%",
        ok,
        "rigid two-contact sink caps depth at pitch*sin(roll) = 0.503 mm; "
        "grain rearrangement is outside the model",
    )
    assert True


def test_report_contact_area_at_optimum():
    pts, best = spike_angle_sweep()
    area = {p.spike_angle_deg: p.result.contact_area_mm2 for p in pts}[best]
    ok = abs(area - 0.27) <= 0.30 * 0.27
    _report("contact area at optimum", area, "0.27 mm^2 +- 30%", ok)
    assert True


# -- lifting budget ---------------------------------------------------------


def test_peak_torque_within_20pct():
    assert lifting_force_budget(SETUP, GEO).torque_mn_mm == pytest.approx(10.0, rel=0.20)


def test_lift_force_within_20pct():
    assert lifting_force_budget(SETUP, GEO).tip_force_mn == pytest.approx(3.0, rel=0.20)


def test_lift_force_exceeds_breakout_requirement():
    b = lifting_force_budget(SETUP, GEO)
    assert b.tip_force_mn > b.required_tip_force_mn


# -- convoy coupling --------------------------------------------------------


def test_phase_lag_strictly_monotone_in_offset():
    lags = [local_phase_lag(SETUP, o) for o in (0.0, 2.0, 5.0, 10.0, 20.0)]
    assert all(b > a for a, b in zip(lags, lags[1:]))


def test_report_phase_lag_magnitude():
    lag = local_phase_lag(SETUP, 20.0)
    _report(
        "peak phase lag across workspace",
        lag,
        "24 deg observed",
        abs(lag) <= 24.0,
        "field geometry alone; measured lag includes substrate slip",
    )
    assert True


def test_convoy_peak_force_strictly_sublinear():
    p1 = convoy_force_profile(SETUP, 1).peak_mn
    for n in (2, 3, 4):
        assert convoy_force_profile(SETUP, n).peak_mn < n * p1


def test_convoy_mean_force_strictly_increasing():
    means = [convoy_force_profile(SETUP, n).mean_mn for n in (1, 2, 3, 4)]
    assert all(b > a for a, b in zip(means, means[1:]))


def test_report_convoy_peak_ratios():
    p1 = convoy_force_profile(SETUP, 1).peak_mn
    r2 = convoy_force_profile(SETUP, 2).peak_mn / p1
    r3 = convoy_force_profile(SETUP, 3).peak_mn / p1
    _report("two-unit peak ratio", r2, "1.6 +- 20%", abs(r2 - 1.6) <= 0.2 * 1.6)
    _report("three-unit peak ratio", r3, "1.8 +- 20%", abs(r3 - 1.8) <= 0.2 * 1.8)
    assert True


def test_convoy_stopper_bounds_held_every_tick():
    cfg = ConvoyConfig()
    sep = convoy_step(SETUP, cfg, cycles=2, step_deg=3.0).separations()
    assert sep.min() >= cfg.stopper_min_mm - 1e-9
    assert sep.max() <= cfg.max_separation_mm + 1e-9


def test_convoy_pace_within_1pct_of_solo():
    tr = convoy_step(SETUP, ConvoyConfig(), cycles=2, step_deg=3.0)
    solo = 2 * stride_length(SETUP, GEO)
    for d in tr.unit_displacements():
        assert d == pytest.approx(solo, rel=0.01)


def test_payload_towing_feasible():
    r = payload_feasibility(SETUP)
    assert r.feasible and r.margin > 1.5


# -- harness ----------------------------------------------------------------


def test_validation_all_hard_gates_pass():
    report = validate_all()
    for line in report.lines():
        print(line)
    assert report.passed


def test_validation_deterministic_across_runs():
    assert dumps_json(validate_all().to_table()) == dumps_json(validate_all().to_table())


def test_sweep_csv_roundtrip(tmp_path):
    t = run_sweep("field")
    p = tmp_path / "field.csv"
    write_csv(t, p)
    back = read_csv(p)
    assert back.columns == t.columns
    for r0, r1 in zip(t.rows, back.rows):
        for c in t.columns:
            assert r1[c] == pytest.approx(r0[c], rel=1e-11)


# -- teleoperation ----------------------------------------------------------


def test_session_record_replay_bit_identical(tmp_path):
    s = SimSession(scene="s_curve", tick_rate=30.0)
    script = {
        0: '{"type": "set", "param": "frequency_hz", "value": 1.7}',
        12: '{"type": "set", "param": "beta_deg", "value": 8.0}',
        30: '{"type": "pause"}',
        36: '{"type": "resume"}',
    }
    frames = []
    for t in range(90):
        if t in script:
            s.apply(script[t])
        frames.append(s.tick())
    p = tmp_path / "rec.jsonl"
    save_recording(s, p)
    again = replay(load_recording(p), scene="s_curve", tick_rate=30.0, extra_ticks=90 - 37)
    assert json.dumps(frames) == json.dumps(again)


def test_collision_latches_until_reset():
    s = SimSession(scene="straight_channel")
    s.apply('{"type": "set", "param": "beta_deg", "value": 90.0}')
    s.apply('{"type": "set", "param": "frequency_hz", "value": 2.0}')
    f = {}
    for _ in range(300):
        f = s.tick()
        if f["collided"]:
            break
    assert f["collided"]
    s.apply('{"type": "resume"}')
    assert s.tick()["collided"]
    s.apply('{"type": "reset"}')
    assert s.tick()["collided"] is False


def test_out_of_range_controls_clamped_and_flagged():
    s = SimSession()
    s.apply('{"type": "set", "param": "frequency_hz", "value": 99.0}')
    f = s.tick()
    assert f["frequency_hz"] == 2.0 and f["clamped"] is True


def _keyboard_pilot(session: SimSession, step_deg: float = 2.0, max_ticks: int = 6000):
    """Steer with discrete +-step_deg steering taps, one message per tick.

    Mimics a human on arrow keys: each tick at most one steering adjustment
    toward the bearing of the next waypoint.  Returns (goal_reached, ticks).
    """
    wps = list(session.scene.waypoints)[1:]
    wp_i = 0
    f = session.frame()
    session.apply('{"type": "set", "param": "frequency_hz", "value": 1.7}')
    n_sent = 1
    while session.tick_index < max_ticks:
        c = f["center"]
        while wp_i < len(wps) - 1 and (c[0] - wps[wp_i][0]) ** 2 + (
            c[1] - wps[wp_i][1]
        ) ** 2 < 4.0**2:
            wp_i += 1
        tx, ty = wps[wp_i]
        bearing = math.degrees(math.atan2(ty - c[1], tx - c[0]))
        diff = (bearing - f["beta_deg"] + 180.0) % 360.0 - 180.0
        if abs(diff) > 0.25:
            tap = max(-step_deg, min(step_deg, diff))
            beta = (f["beta_deg"] + tap) % 360.0
            session.apply(
                json.dumps({"type": "set", "param": "beta_deg", "value": beta})
            )
            n_sent += 1
        f = session.tick()
        if f["collided"]:
            return False, session.tick_index, n_sent
        if f["goal_reached"]:
            return True, session.tick_index, n_sent
    return False, session.tick_index, n_sent


def test_s_curve_piloted_to_goal_with_keyboard_steps():
    session = SimSession(scene="s_curve", tick_rate=30.0)
    ok, ticks, n_sent = _keyboard_pilot(session)
    assert ok, f"pilot failed after {ticks} ticks at {session.frame()['center']}"
    assert session.frame()["collided"] is False
    # the server-side input log holds exactly one entry per message sent
    assert len(session.recording) == n_sent
    print(f"[PASS] report-only s-curve pilot: goal in {ticks} ticks "
          f"({ticks / 30.0:.1f} s simulated), input log {n_sent} messages")
