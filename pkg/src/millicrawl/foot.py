"""Spiked-foot cross-section geometry and granular-substrate penetration.

The foot is a comb cut from sheet stock: ``n_spikes`` truncated triangular
spikes of length l1 and full apex angle ``delta`` hang from a base strip of
height l3, spaced at pitch l2.  The outer spike edges are extended straight
to the top edge (bevelled flush ends); tips carry a small flat from the
cutting process.  This yields 4 n profile vertices.

Penetration into a packed granular substrate is modelled as a rigid sink at a
given roll angle: the substrate surface is a horizontal support line, and the
profile settles until arrested by two contacts.  Either a second spike tip
reaches the line while the lowest spike penetrates (tip arrest), or the base
underside lands on it first (base arrest).  The penetration depth is the drop
from the support line to the lowest vertex, and the engaged cross-section is
the profile area below the line.  Rolling deeper helps until the arrest
geometry cuts in; the roll sweep reports the depth-maximising pose.

Narrow spikes sink base-first: the strip is arrested on the substrate surface
with the pockets beside the flanks under-filled, leaving visible gaps along
the spikes.  Wide spikes arrest tip-to-tip with the base clear of the surface
and the pockets filled.  ``gap_present`` captures that distinction.

All lengths in mm, areas in mm^2 (per unit sheet thickness).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import GRAVITY
from .gait import UnitGeometry
from .magnetics import ActuationSetup, cycle_gradient_extrema

CONTACT_TOL_MM = 0.005
"""Base-contact tolerance: half the tip flat, i.e. the cut resolution."""

DEPTH_QUANTUM = 1e-12
"""Depths are rounded to this (mm) before comparisons.  Past the arrest
crossover the depth is exactly flat in the design angle, and raw float noise
would otherwise pick an arbitrary point on the plateau."""


@dataclass(frozen=True)
class FootDesign:
    """Comb parameters: spike length l1, pitch l2, base height l3 (mm)."""

    spike_length_mm: float = 0.5
    spike_pitch_mm: float = 0.8
    base_height_mm: float = 1.0
    spike_angle_deg: float = 45.0
    tip_width_mm: float = 0.010
    n_spikes: int = 4

    def __post_init__(self):
        if min(self.spike_length_mm, self.spike_pitch_mm, self.base_height_mm) <= 0:
            raise ValueError("lengths must be positive")
        if not 0.0 < self.spike_angle_deg < 90.0:
            raise ValueError("spike angle must be in (0, 90) degrees")
        if self.n_spikes < 2:
            raise ValueError("need at least two spikes")
        w = self.spike_length_mm * np.tan(np.radians(self.spike_angle_deg) / 2)
        if 2 * w >= self.spike_pitch_mm:
            raise ValueError("spikes overlap at this angle/pitch")


@dataclass(frozen=True)
class FootProfile:
    """Closed cross-section polygon with feature indices.

    ``vertices``: (4 n, 2) array, y = 0 at the spike roots, tips below.
    ``tip_pairs``: per spike, the two vertex indices of its tip flat.
    ``base_indices``: vertices on the base underside between spikes.
    """

    vertices: np.ndarray
    tip_pairs: list
    base_indices: list


def foot_profile(design: FootDesign) -> FootProfile:
    """Construct the comb cross-section for a design.

    Tip flats sit at y = -(l1 - tw / tan(delta/2)) where tw is the tip
    half-width: truncating a sharp apex of length l1 at width 2 tw.
    """
    half = np.radians(design.spike_angle_deg) / 2
    l1, l2, l3 = design.spike_length_mm, design.spike_pitch_mm, design.base_height_mm
    w = l1 * np.tan(half)
    tw = design.tip_width_mm / 2
    n = design.n_spikes
    xs = [w + k * l2 for k in range(n)]
    verts: list = []
    tips: list = []
    base: list = []
    # top edge, with the outer spike edges extended to it (flush bevels)
    verts.append((xs[0] - (l1 + l3) * np.tan(half), l3))
    verts.append((xs[-1] + (l1 + l3) * np.tan(half), l3))
    ytip = -(l1 - tw / np.tan(half))
    for k in range(n - 1, -1, -1):
        xc = xs[k]
        if k < n - 1:
            verts.append((xc + w, 0.0))
            base.append(len(verts) - 1)
        i0 = len(verts)
        verts.append((xc + tw, ytip))
        verts.append((xc - tw, ytip))
        tips.append((i0, i0 + 1))
        if k > 0:
            verts.append((xc - w, 0.0))
            base.append(len(verts) - 1)
    return FootProfile(np.array(verts), tips, base)


def polygon_area(vertices: np.ndarray) -> float:
    """Shoelace area of a closed polygon, orientation-independent."""
    if len(vertices) < 3:
        return 0.0
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def clip_below(vertices: np.ndarray, level: float) -> np.ndarray:
    """Part of a closed polygon with y <= level (half-plane clip)."""
    out = []
    for i in range(len(vertices)):
        a, b = vertices[i], vertices[(i + 1) % len(vertices)]
        if a[1] <= level:
            out.append(a)
        if (a[1] <= level) != (b[1] <= level):
            t = (level - a[1]) / (b[1] - a[1])
            out.append(a + t * (b - a))
    return np.array(out) if out else np.empty((0, 2))


@dataclass(frozen=True)
class PenetrationResult:
    """Deepest two-contact sink found over the roll sweep.

    ``gap_present`` is True when that sink is base-arrested: the base strip
    underside meets the substrate surface (within ``CONTACT_TOL_MM``) while
    the spike pockets stay under-filled, the narrow-spike failure mode.  A
    tip-arrested sink keeps the base clear and fills the pockets.
    """

    depth_mm: float
    contact_area_mm2: float
    roll_deg: float
    gap_present: bool
    base_clearance_mm: float


def penetration(
    design: FootDesign,
    tilt_max_deg: float = 39.377,
    roll_step_deg: float = 0.5,
    contact_tol_mm: float = CONTACT_TOL_MM,
) -> PenetrationResult:
    """Depth-maximising rigid sink over the signed roll grid.

    ``tilt_max_deg`` defaults to the peak body roll the standard drive
    reaches (its field-elevation amplitude).  At each roll the support line
    settles at the higher of the two arrest levels: the second-lowest spike
    tip (one spike penetrating, next one touching) or the lowest base
    underside vertex.  First roll achieving the maximum quantised depth wins,
    positive rolls before negative at equal magnitude.
    """
    prof = foot_profile(design)
    v = prof.vertices
    best = None
    for rho in np.arange(0.0, tilt_max_deg + 1e-9, roll_step_deg):
        for sgn in (1.0, -1.0):
            r = np.radians(sgn * rho)
            rot = np.array([[np.cos(r), -np.sin(r)], [np.sin(r), np.cos(r)]])
            rv = v @ rot.T
            tip_levels = sorted(min(rv[i, 1], rv[j, 1]) for i, j in prof.tip_pairs)
            base_min = min(rv[i, 1] for i in prof.base_indices)
            level = min(tip_levels[1], base_min)
            depth = round(float(level - rv[:, 1].min()), 12)
            if depth <= 0:
                continue
            area = polygon_area(clip_below(rv, level))
            res = PenetrationResult(
                depth_mm=depth,
                contact_area_mm2=float(area),
                roll_deg=float(sgn * rho),
                gap_present=bool(base_min - level <= contact_tol_mm),
                base_clearance_mm=float(base_min - level),
            )
            if best is None or depth > best.depth_mm:
                best = res
            if sgn < 0 and rho == 0.0:
                break
    if best is None:
        raise ValueError("no penetrating pose found")
    return best


@dataclass(frozen=True)
class SweepPoint:
    spike_angle_deg: float
    result: PenetrationResult


def spike_angle_sweep(
    angles_deg=None,
    design: FootDesign = FootDesign(),
    tilt_max_deg: float = 39.377,
) -> tuple[list, float]:
    """Penetration across design angles; returns (points, best angle).

    Sweeps ``spike_angle_deg`` at otherwise fixed design, default 10..60 deg
    in 1 deg steps.  The best angle is the first maximiser of the quantised
    depth, which pins the arrest-crossover knee rather than a noise-selected
    point on the flat region beyond it.
    """
    if angles_deg is None:
        angles_deg = np.arange(10.0, 60.0 + 1e-9, 1.0)
    pts = []
    for ang in np.asarray(angles_deg, dtype=float):
        d = FootDesign(
            spike_length_mm=design.spike_length_mm,
            spike_pitch_mm=design.spike_pitch_mm,
            base_height_mm=design.base_height_mm,
            spike_angle_deg=float(ang),
            tip_width_mm=design.tip_width_mm,
            n_spikes=design.n_spikes,
        )
        pts.append(SweepPoint(float(ang), penetration(d, tilt_max_deg=tilt_max_deg)))
    best = max(pts, key=lambda p: p.result.depth_mm)  # ties: first occurrence
    return pts, best.spike_angle_deg


@dataclass(frozen=True)
class LiftBudget:
    """Force accounting for lifting one foot off the substrate.

    The field torque on the body moment, worked over the body length, versus
    the force a pure field-magnitude gradient could supply.
    """

    torque_mn_mm: float
    tip_force_mn: float
    required_tip_force_mn: float
    weight_mn: float
    gradient_available_tpm: float
    gradient_needed_tpm: float

    @property
    def torque_sufficient(self) -> bool:
        return self.tip_force_mn >= self.required_tip_force_mn

    @property
    def gradient_sufficient(self) -> bool:
        return self.gradient_available_tpm >= self.gradient_needed_tpm


def lifting_force_budget(
    setup: ActuationSetup,
    geometry: UnitGeometry = UnitGeometry(),
    required_tip_force_mn: float = 0.1,
) -> LiftBudget:
    """Compare torque-based and gradient-based foot lifting.

    Torque m |B| acts about the anchored foot, so the free tip sees
    tau / L.  The alternative, pulling the whole unit up a field-magnitude
    gradient, needs g m_unit / moment tesla-per-metre; the setup's cycle
    maximum is far below that, which is why lifting rides on torque.
    """
    b_max_t = max(
        float(np.linalg.norm(setup.center_field_mt(a))) for a in np.arange(0.0, 360.0, 1.0)
    ) * 1e-3
    torque_nm = geometry.moment_am2 * b_max_t
    tip_force_n = torque_nm / (geometry.length_mm * 1e-3)
    weight_n = geometry.mass_mg * 1e-6 * GRAVITY
    ext = cycle_gradient_extrema(setup, step_deg=5.0)
    return LiftBudget(
        torque_mn_mm=torque_nm * 1e6,
        tip_force_mn=tip_force_n * 1e3,
        required_tip_force_mn=required_tip_force_mn,
        weight_mn=weight_n * 1e3,
        gradient_available_tpm=ext["max_magnitude_gradient"],
        gradient_needed_tpm=weight_n / geometry.moment_am2,
    )
