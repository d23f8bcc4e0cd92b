"""Foot-geometry tests.

Polygon primitives are cross-checked against shapely (independent geometry
kernel) before the penetration model is trusted.  Sink results for the three
manufactured spike angles are frozen from the two-arrest construction.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import Polygon, box

from millicrawl.foot import (
    FootDesign,
    clip_below,
    foot_profile,
    lifting_force_budget,
    penetration,
    polygon_area,
    spike_angle_sweep,
)
from millicrawl.magnetics import ActuationSetup


def shapely_poly(verts):
    return Polygon([tuple(p) for p in verts]).buffer(0)


def test_polygon_area_matches_shapely():
    prof = foot_profile(FootDesign())
    assert polygon_area(prof.vertices) == pytest.approx(
        shapely_poly(prof.vertices).area, rel=1e-12
    )


def test_clip_below_matches_shapely():
    prof = foot_profile(FootDesign(spike_angle_deg=30.0))
    v = prof.vertices
    for level in (-0.3, -0.1, 0.05, 0.5):
        clipped = clip_below(v, level)
        half_plane = box(v[:, 0].min() - 1, v[:, 1].min() - 1, v[:, 0].max() + 1, level)
        want = shapely_poly(v).intersection(half_plane).area
        assert polygon_area(clipped) == pytest.approx(want, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.floats(-60.0, 60.0))
def test_area_invariant_under_rotation(angle):
    prof = foot_profile(FootDesign())
    r = np.radians(angle)
    rot = np.array([[np.cos(r), -np.sin(r)], [np.sin(r), np.cos(r)]])
    rv = prof.vertices @ rot.T
    assert polygon_area(rv) == pytest.approx(polygon_area(prof.vertices), rel=1e-9)


def test_profile_vertex_count_and_features():
    for n in (2, 3, 4, 6):
        prof = foot_profile(FootDesign(n_spikes=n))
        assert len(prof.vertices) == 4 * n
        assert len(prof.tip_pairs) == n
        assert len(prof.base_indices) == 2 * (n - 1)


def test_profile_tip_height():
    d = FootDesign(spike_angle_deg=45.0)
    prof = foot_profile(d)
    # truncated apex: flat sits tw/tan(half) short of the full spike length
    want = -(d.spike_length_mm - (d.tip_width_mm / 2) / np.tan(np.radians(22.5)))
    for i, j in prof.tip_pairs:
        assert prof.vertices[i, 1] == pytest.approx(want, abs=1e-12)
        assert prof.vertices[j, 1] == pytest.approx(want, abs=1e-12)


def test_design_validation():
    with pytest.raises(ValueError):
        FootDesign(spike_angle_deg=0.0)
    with pytest.raises(ValueError):
        FootDesign(n_spikes=1)
    with pytest.raises(ValueError):
        # 0.5 mm spikes at 130 deg-equivalent width overlap the 0.8 mm pitch
        FootDesign(spike_angle_deg=80.0, spike_length_mm=0.9)


# -- penetration: frozen two-arrest sink results ----------------------------

FROZEN = {
    15.0: dict(depth=0.427720, area=0.038750, roll=32.5, gap=True),
    30.0: dict(depth=0.470228, area=0.098923, roll=36.0, gap=True),
    45.0: dict(depth=0.503456, area=0.200696, roll=39.0, gap=False),
}


@pytest.mark.parametrize("angle", sorted(FROZEN))
def test_penetration_frozen(angle):
    r = penetration(FootDesign(spike_angle_deg=angle))
    want = FROZEN[angle]
    assert r.depth_mm == pytest.approx(want["depth"], abs=2e-6)
    assert r.contact_area_mm2 == pytest.approx(want["area"], abs=2e-6)
    assert r.roll_deg == pytest.approx(want["roll"], abs=1e-9)
    assert r.gap_present is want["gap"]


def test_penetration_depth_ordering_strict():
    d15 = penetration(FootDesign(spike_angle_deg=15.0)).depth_mm
    d30 = penetration(FootDesign(spike_angle_deg=30.0)).depth_mm
    d45 = penetration(FootDesign(spike_angle_deg=45.0)).depth_mm
    assert d15 < d30 < d45


def test_penetration_area_ordering():
    areas = [
        penetration(FootDesign(spike_angle_deg=a)).contact_area_mm2 for a in (15.0, 30.0, 45.0)
    ]
    assert areas[0] < areas[1] < areas[2]


def test_base_clearance_values():
    # base-arrested sinks sit on the substrate; the tip-arrested 45 deg foot
    # hangs clear by ~9 um
    r15 = penetration(FootDesign(spike_angle_deg=15.0))
    r45 = penetration(FootDesign(spike_angle_deg=45.0))
    assert abs(r15.base_clearance_mm) <= 1e-6
    assert r45.base_clearance_mm == pytest.approx(9.22e-3, abs=5e-4)


def test_positive_roll_preferred_on_symmetric_profile():
    # the comb is mirror-symmetric, so +rho and -rho tie; first-max keeps +
    assert penetration(FootDesign(spike_angle_deg=45.0)).roll_deg > 0


def test_depth_monotone_in_tilt_range():
    d = FootDesign(spike_angle_deg=45.0)
    depths = [penetration(d, tilt_max_deg=t).depth_mm for t in (10.0, 20.0, 30.0, 39.377)]
    assert all(b >= a for a, b in zip(depths, depths[1:]))
    assert depths[0] < depths[-1]


def test_depth_bounded_by_pitch_chord():
    # tip-to-tip arrest caps depth at pitch * sin(roll) regardless of angle
    cap = 0.8 * np.sin(np.radians(39.0)) + 1e-9
    for ang in (15.0, 30.0, 45.0, 55.0):
        assert penetration(FootDesign(spike_angle_deg=ang)).depth_mm <= cap


def test_spike_angle_sweep_optimum():
    pts, best = spike_angle_sweep()
    assert best == 43.0
    by_angle = {p.spike_angle_deg: p.result for p in pts}
    assert by_angle[43.0].depth_mm == pytest.approx(0.503456, abs=2e-6)
    # plateau beyond the arrest crossover: identical quantised depth
    assert by_angle[50.0].depth_mm == by_angle[43.0].depth_mm
    assert by_angle[43.0].depth_mm > by_angle[42.0].depth_mm


# -- lifting budget ---------------------------------------------------------


def test_lifting_budget_frozen():
    b = lifting_force_budget(ActuationSetup())
    assert b.torque_mn_mm == pytest.approx(10.18895, rel=1e-4)
    assert b.tip_force_mn == pytest.approx(3.28676, rel=1e-4)
    assert b.weight_mn == pytest.approx(0.19620, rel=1e-4)
    assert b.gradient_needed_tpm == pytest.approx(0.116786, rel=1e-4)
    assert b.gradient_available_tpm == pytest.approx(0.0384414, rel=1e-3)


def test_lifting_budget_verdicts():
    b = lifting_force_budget(ActuationSetup())
    assert b.torque_sufficient  # 3.3 mN against the 0.1 mN requirement
    assert not b.gradient_sufficient  # 0.038 T/m available, 0.117 needed
    assert b.tip_force_mn > 30 * b.required_tip_force_mn
