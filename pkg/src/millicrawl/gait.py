"""Anchor-alternating crawling kinematics of a two-footed magnetic unit.

The unit is a rigid body with a spiked foot at each end, magnetised along its
long axis, that aligns with the external field direction.  As the drive phase
``alpha`` advances, the field elevation rocks between +-phi_max while the
azimuth sways through a much smaller arc; the foot on the descending end
anchors in the substrate and the other end lifts and swings forward.  Each
sign flip of the elevation swaps the anchor, so one full rotation advances
the body by the chord

    stride = 2 L sin(swing / 2)

where L is the foot-to-foot distance and ``swing`` the peak-to-peak azimuth
excursion.  Because the azimuth sways about the static-field axis (+y), the
net displacement is perpendicular to the mean body axis; a z-rotation
``beta`` of the whole field pattern rotates the crawl direction by the same
angle.

Positions are in mm; the body frame keeps foot A at the -u end and foot B at
the +u end of the body axis u(psi, phi).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .magnetics import ActuationSetup, field_orientation


@dataclass(frozen=True)
class UnitGeometry:
    """Rigid-body parameters of one crawling unit.

    ``length_mm`` is the foot-to-foot distance, ``mass_mg`` the unit mass,
    ``moment_am2`` the total onboard magnetic moment (magnetised along the
    body axis).
    """

    length_mm: float = 3.1
    mass_mg: float = 20.0
    moment_am2: float = 1.68e-3

    def __post_init__(self):
        if self.length_mm <= 0 or self.mass_mg <= 0 or self.moment_am2 <= 0:
            raise ValueError("unit geometry values must be positive")


def stride_length(setup: ActuationSetup, geometry: UnitGeometry = UnitGeometry()) -> float:
    """Per-cycle advance of the body centre, mm: 2 L sin(swing/2)."""
    half = np.radians(setup.azimuth_swing_deg() / 2.0)
    return float(2.0 * geometry.length_mm * np.sin(half))


def crawl_velocity(stride_mm: float, frequency_hz: float) -> float:
    """Mean crawling speed, mm/s, for one stride per rotation cycle."""
    return stride_mm * frequency_hz


def body_direction(psi_deg: float, phi_deg: float) -> np.ndarray:
    """Unit vector of the body axis at azimuth psi, elevation phi."""
    psi, phi = np.radians(psi_deg), np.radians(phi_deg)
    return np.array(
        [np.cos(phi) * np.cos(psi), np.cos(phi) * np.sin(psi), np.sin(phi)]
    )


@dataclass(frozen=True)
class GaitState:
    """Kinematic state between ticks: which foot anchors and where."""

    alpha_deg: float
    beta_deg: float
    anchored: str  # "a" (rear foot) or "b" (front foot)
    anchor_xy: tuple


def _pose_angles(setup: ActuationSetup, alpha_deg: float, beta_deg: float):
    o = field_orientation(setup.center_field_mt(alpha_deg))
    return o.azimuth_deg + beta_deg, o.elevation_deg


def body_pose(setup: ActuationSetup, geometry: UnitGeometry, state: GaitState):
    """Foot and centre positions (mm, 3-vectors) for a gait state.

    The anchored foot sits on the substrate plane; the free foot follows the
    body axis, with its height clamped at zero during the one-tick handover
    around the elevation crossing.
    """
    psi, phi = _pose_angles(setup, state.alpha_deg, state.beta_deg)
    ax, ay = state.anchor_xy
    anchor = np.array([ax, ay, 0.0])
    if state.anchored == "a":
        u = body_direction(psi, max(phi, 0.0))
        foot_a = anchor
        foot_b = anchor + geometry.length_mm * u
    else:
        u = body_direction(psi, min(phi, 0.0))
        foot_b = anchor
        foot_a = anchor - geometry.length_mm * u
    return foot_a, foot_b, 0.5 * (foot_a + foot_b)


def gait_state_init(
    setup: ActuationSetup,
    start_xy=(0.0, 0.0),
    alpha0_deg: float = 0.0,
    beta_deg: float = 0.0,
) -> GaitState:
    """Initial state with the touching foot anchored at ``start_xy``."""
    _, phi = _pose_angles(setup, alpha0_deg, beta_deg)
    anchored = "a" if phi > 0 else "b"
    return GaitState(alpha0_deg, beta_deg, anchored, (float(start_xy[0]), float(start_xy[1])))


def gait_advance(
    setup: ActuationSetup,
    geometry: UnitGeometry,
    state: GaitState,
    alpha_deg: float,
    beta_deg: float | None = None,
) -> GaitState:
    """Advance to a new drive phase, swapping the anchor on elevation flips.

    When the field elevation changes sign the lifted foot has just touched
    down; it becomes the new anchor at its current planar position.
    """
    beta = state.beta_deg if beta_deg is None else float(beta_deg)
    _, phi = _pose_angles(setup, alpha_deg, beta)
    want = "a" if phi > 0 else "b"
    interim = GaitState(alpha_deg, beta, state.anchored, state.anchor_xy)
    if want == state.anchored:
        return interim
    foot_a, foot_b, _ = body_pose(setup, geometry, interim)
    landing = foot_a if want == "a" else foot_b
    return GaitState(alpha_deg, beta, want, (float(landing[0]), float(landing[1])))


@dataclass
class GaitTrace:
    """Per-tick record of a simulated crawl."""

    alphas_deg: np.ndarray
    foot_a: np.ndarray  # (n, 3) mm
    foot_b: np.ndarray
    center: np.ndarray
    anchored: list
    beta_deg: float

    @property
    def displacement_mm(self) -> np.ndarray:
        """Net planar displacement of the body centre, mm (2-vector)."""
        return self.center[-1, :2] - self.center[0, :2]

    @property
    def vertical_excursion_mm(self) -> float:
        """Largest foot height reached during the trace, mm."""
        return float(max(self.foot_a[:, 2].max(), self.foot_b[:, 2].max()))

    @property
    def inplane_excursion_mm(self) -> float:
        """Largest planar point-to-point span of either foot path, mm."""
        spans = []
        for path in (self.foot_a[:, :2], self.foot_b[:, :2]):
            d = path[:, None, :] - path[None, :, :]
            spans.append(float(np.sqrt((d**2).sum(-1)).max()))
        return max(spans)


def step_simulate(
    setup: ActuationSetup,
    geometry: UnitGeometry = UnitGeometry(),
    beta_deg: float = 0.0,
    cycles: int = 1,
    step_deg: float = 1.0,
    start_xy=(0.0, 0.0),
    alpha0_deg: float = 0.0,
) -> GaitTrace:
    """Simulate ``cycles`` full drive rotations at fixed steering angle.

    Ticks the drive phase in ``step_deg`` increments and records both foot
    positions and the body centre.  Deterministic; no randomness anywhere.
    """
    if cycles < 1 or step_deg <= 0:
        raise ValueError("need cycles >= 1 and a positive step")
    alphas = alpha0_deg + np.arange(0.0, 360.0 * cycles + step_deg / 2, step_deg)
    state = gait_state_init(setup, start_xy, alpha0_deg, beta_deg)
    fa, fb, ce, an = [], [], [], []
    for a in alphas:
        state = gait_advance(setup, geometry, state, float(a))
        pa, pb, pc = body_pose(setup, geometry, state)
        fa.append(pa)
        fb.append(pb)
        ce.append(pc)
        an.append(state.anchored)
    return GaitTrace(
        alphas_deg=alphas,
        foot_a=np.array(fa),
        foot_b=np.array(fb),
        center=np.array(ce),
        anchored=an,
        beta_deg=beta_deg,
    )


def foot_path(
    setup: ActuationSetup,
    geometry: UnitGeometry = UnitGeometry(),
    beta_deg: float = 0.0,
    step_deg: float = 0.5,
) -> GaitTrace:
    """One-cycle trace for inspecting the foot trajectories.

    The elevation rocks through twice the pose-angle range while the azimuth
    sways through the (smaller) swing arc, so the foot motion is dominated by
    the vertical rocking in angle space even though the planar chord per
    half-cycle exceeds the peak height.
    """
    return step_simulate(setup, geometry, beta_deg, cycles=1, step_deg=step_deg)


class TrajectoryError(RuntimeError):
    """Raised when a waypoint cannot be reached within the cycle budget."""


@dataclass
class TrajectoryResult:
    """Outcome of waypoint following: per-cycle centres and steering."""

    centers: np.ndarray  # (n, 2) mm, one row per completed cycle
    betas_deg: np.ndarray
    cycles: int
    reached: list


def trajectory_follow(
    setup: ActuationSetup,
    geometry: UnitGeometry,
    waypoints_mm,
    capture_radius_mm: float = 2.0,
    max_cycles: int = 1000,
    step_deg: float = 3.0,
) -> TrajectoryResult:
    """Steer through waypoints by re-aiming the crawl direction each cycle.

    Starts at the first waypoint.  Before every cycle the steering angle is
    set to the bearing of the current target; the cycle is then simulated
    with the anchor-alternating kinematics.  A waypoint counts as reached
    within ``capture_radius_mm`` (keep this above half a stride, or the unit
    can orbit a target it keeps overstepping).

    Raises ``TrajectoryError`` if the budget runs out.
    """
    wps = [np.asarray(w, dtype=float) for w in waypoints_mm]
    if len(wps) < 2:
        raise ValueError("need at least two waypoints")
    pos = wps[0][:2].copy()
    centers, betas, reached = [pos.copy()], [], []
    used = 0
    for wp in wps[1:]:
        while float(np.linalg.norm(wp[:2] - pos)) > capture_radius_mm:
            if used >= max_cycles:
                raise TrajectoryError(
                    f"cycle budget {max_cycles} exhausted before waypoint {wp[:2]}"
                )
            d = wp[:2] - pos
            beta = float(np.degrees(np.arctan2(d[1], d[0])))
            trace = step_simulate(
                setup, geometry, beta_deg=beta, cycles=1, step_deg=step_deg, start_xy=pos
            )
            # advance the centre by the cycle displacement; anchors re-seed
            # each cycle so the trace is a pure kinematic increment
            pos = pos + trace.displacement_mm
            centers.append(pos.copy())
            betas.append(beta)
            used += 1
        reached.append(wp[:2].copy())
    return TrajectoryResult(
        centers=np.array(centers),
        betas_deg=np.array(betas),
        cycles=used,
        reached=reached,
    )
