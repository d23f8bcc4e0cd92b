"""Multi-unit convoys: phase coupling, linked crawling, and payload towing.

Units resting at different points of the workspace see the rotating-magnet
field at slightly different geometry, so their orientation cycles are phase
shifted relative to the workspace centre.  ``local_phase_lag`` extracts that
shift from the full superposed field by aligning orientation traces.

A convoy is a line of units joined by loose stopper links that bound the
centre-to-centre spacing on both sides.  Each unit crawls with its own phase;
the links are enforced as a front-to-back projection after every tick.

Anchoring force is modelled per unit as a half-sinusoid burst over the power
half of the cycle.  Near-synchronous units overlap their bursts, but the
substrate under the anchored feet saturates: transmission of the summed force
above a single-unit amplitude is derated by an overlap-efficiency factor.
That keeps the peak sublinear in unit count while the cycle mean still grows
with every added unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import GRAVITY
from .gait import (
    GaitState,
    UnitGeometry,
    body_pose,
    gait_advance,
    gait_state_init,
    stride_length,
)
from .magnetics import ActuationSetup, field_orientation, superposed_field

UNIT_FORCE_AMPLITUDE_MN = 0.93
"""Measured single-unit anchoring force amplitude with spiked feet, mN."""

OVERLAP_EFFICIENCY = 0.44
"""Transmission efficiency of summed force above one unit amplitude;
calibrated once against measured two- and three-unit peaks."""


def _orientation_trace(setup: ActuationSetup, point_mm, step_deg: float):
    az, el = [], []
    for a in np.arange(0.0, 360.0, step_deg):
        o = field_orientation(superposed_field(setup, point_mm, a))
        az.append(np.radians(o.azimuth_deg))
        el.append(np.radians(o.elevation_deg))
    return np.unwrap(np.array(az)), np.array(el)


@lru_cache(maxsize=512)
def local_phase_lag(
    setup: ActuationSetup, offset_mm: float, grid_step_deg: float = 0.5
) -> float:
    """Drive-phase shift of the orientation cycle at a planar offset, degrees.

    Positive means the cycle at ``(offset_mm, 0, 0)`` trails the workspace
    centre: it reaches each orientation that many drive degrees later.  Found
    by circularly shifting the centre trace against the local one and
    minimising the wrapped mean-square orientation difference on the
    ``grid_step_deg`` phase grid.  Results are cached per setup and offset.
    """
    if offset_mm == 0.0:
        return 0.0
    az0, el0 = _orientation_trace(setup, (0.0, 0.0, 0.0), grid_step_deg)
    az1, el1 = _orientation_trace(setup, (float(offset_mm), 0.0, 0.0), grid_step_deg)
    n = len(az0)
    best_k, best_mse = 0, np.inf
    for k in range(n):
        da = az1 - np.roll(az0, -k)
        da = (da + np.pi) % (2.0 * np.pi) - np.pi
        de = el1 - np.roll(el0, -k)
        mse = float(np.mean(da**2 + de**2))
        if mse < best_mse:
            best_k, best_mse = k, mse
    shift = best_k * grid_step_deg
    if shift > 180.0:
        shift -= 360.0
    # local(alpha) ~ centre(alpha + shift): a negative shift means trailing
    return -shift


@dataclass(frozen=True)
class ConvoyConfig:
    """Line formation: ``n_units`` at ``spacing_mm`` centre separation.

    Stopper links allow separations in [``stopper_min_mm``, ``spacing_mm`` +
    ``slack_mm``].
    """

    n_units: int = 3
    spacing_mm: float = 5.0
    slack_mm: float = 1.0
    stopper_min_mm: float = 3.0
    geometry: UnitGeometry = UnitGeometry()

    def __post_init__(self):
        if self.n_units < 1:
            raise ValueError("need at least one unit")
        if not 0.0 < self.stopper_min_mm <= self.spacing_mm:
            raise ValueError("stopper_min_mm must be in (0, spacing_mm]")
        if self.slack_mm < 0:
            raise ValueError("slack must be nonnegative")

    @property
    def max_separation_mm(self) -> float:
        return self.spacing_mm + self.slack_mm


@dataclass
class ConvoyTrace:
    """Per-tick centres of every unit, plus the per-unit phase lags used."""

    alphas_deg: np.ndarray
    centers: np.ndarray  # (ticks, n_units, 3) mm
    lags_deg: np.ndarray

    def separations(self) -> np.ndarray:
        """(ticks, n_units - 1) consecutive centre distances, mm."""
        d = self.centers[:, :-1, :2] - self.centers[:, 1:, :2]
        return np.sqrt((d**2).sum(-1))

    def unit_displacements(self) -> np.ndarray:
        """Net planar displacement per unit over the trace, mm."""
        d = self.centers[-1, :, :2] - self.centers[0, :, :2]
        return np.sqrt((d**2).sum(-1))


def convoy_step(
    setup: ActuationSetup,
    config: ConvoyConfig = ConvoyConfig(),
    beta_deg: float = 0.0,
    cycles: int = 1,
    step_deg: float = 3.0,
    start_xy=(0.0, 0.0),
) -> ConvoyTrace:
    """Simulate a convoy crawl with per-unit phase lags and stopper links.

    The head unit starts at ``start_xy``; unit i forms up ``i * spacing_mm``
    behind it along -x (the crawl axis at beta = 0, then rotated by beta).
    Phase lags are evaluated once at the formation offsets: formations stay
    near the centre during a run, where the lag varies slowly.

    After each tick, separations are projected front-to-back into the stopper
    interval by shifting the trailing unit along the line between centres.
    """
    b = np.radians(beta_deg)
    axis = np.array([np.cos(b), np.sin(b)])
    offsets = [-i * config.spacing_mm for i in range(config.n_units)]
    lags = np.array([local_phase_lag(setup, o) for o in offsets])
    states = []
    for i, off in enumerate(offsets):
        xy = np.asarray(start_xy, dtype=float) + off * axis
        states.append(gait_state_init(setup, xy, alpha0_deg=-lags[i], beta_deg=beta_deg))
    alphas = np.arange(0.0, 360.0 * cycles + step_deg / 2, step_deg)
    centers = np.zeros((len(alphas), config.n_units, 3))
    for t, a in enumerate(alphas):
        pose = []
        for i in range(config.n_units):
            states[i] = gait_advance(
                setup, config.geometry, states[i], float(a - lags[i])
            )
            pose.append(body_pose(setup, config.geometry, states[i]))
        # stopper projection, head first: the trailing unit yields
        for i in range(1, config.n_units):
            ahead = pose[i - 1][2][:2]
            here = pose[i][2][:2]
            d = ahead - here
            dist = float(np.linalg.norm(d))
            target = np.clip(dist, config.stopper_min_mm, config.max_separation_mm)
            if dist > 1e-12 and abs(target - dist) > 1e-12:
                shift = (dist - target) * d / dist
                s = states[i]
                states[i] = GaitState(
                    s.alpha_deg,
                    s.beta_deg,
                    s.anchored,
                    (s.anchor_xy[0] + shift[0], s.anchor_xy[1] + shift[1]),
                )
                pose[i] = body_pose(setup, config.geometry, states[i])
        for i in range(config.n_units):
            centers[t, i] = pose[i][2]
    return ConvoyTrace(alphas_deg=alphas, centers=centers, lags_deg=lags)


@dataclass
class ForceProfile:
    """Propulsive-force waveform of a convoy over one drive cycle."""

    alphas_deg: np.ndarray
    raw_sum_mn: np.ndarray
    effective_mn: np.ndarray
    unit_amplitude_mn: float
    overlap_efficiency: float

    @property
    def peak_mn(self) -> float:
        return float(self.effective_mn.max())

    @property
    def mean_mn(self) -> float:
        return float(self.effective_mn.mean())


def convoy_force_profile(
    setup: ActuationSetup,
    n_units: int,
    spacing_mm: float = 5.0,
    unit_amplitude_mn: float = UNIT_FORCE_AMPLITUDE_MN,
    overlap_efficiency: float = OVERLAP_EFFICIENCY,
    step_deg: float = 0.5,
) -> ForceProfile:
    """Summed anchoring-force waveform with overlap derating.

    Each unit contributes A max(0, sin(alpha - lag_i)) over the cycle.  The
    summed force transmits fully up to one unit amplitude; the excess is
    derated by ``overlap_efficiency`` (substrate saturation under
    near-synchronous bursts).
    """
    if n_units < 1:
        raise ValueError("need at least one unit")
    alphas = np.arange(0.0, 360.0, step_deg)
    lags = np.array([local_phase_lag(setup, -i * spacing_mm) for i in range(n_units)])
    raw = np.zeros_like(alphas)
    for lag in lags:
        raw += unit_amplitude_mn * np.maximum(0.0, np.sin(np.radians(alphas - lag)))
    a = unit_amplitude_mn
    eff = np.where(raw <= a, raw, a + overlap_efficiency * (raw - a))
    return ForceProfile(
        alphas_deg=alphas,
        raw_sum_mn=raw,
        effective_mn=eff,
        unit_amplitude_mn=unit_amplitude_mn,
        overlap_efficiency=overlap_efficiency,
    )


@dataclass(frozen=True)
class PayloadReport:
    """Towing feasibility of a convoy against sliding friction."""

    drag_mn: float
    available_mean_mn: float
    margin: float

    @property
    def feasible(self) -> bool:
        return self.available_mean_mn > self.drag_mn


def payload_feasibility(
    setup: ActuationSetup,
    config: ConvoyConfig = ConvoyConfig(),
    payload_mass_mg: float = 70.0,
    friction_mu: float = 0.5,
) -> PayloadReport:
    """Mean convoy force against the sliding drag of a towed payload.

    Drag is mu m g for a payload sliding on the substrate.  The comparison
    uses the cycle-mean effective force: towing is quasi-static through the
    tether, so the burst structure averages out.
    """
    drag_n = friction_mu * payload_mass_mg * 1e-6 * GRAVITY
    prof = convoy_force_profile(setup, config.n_units, config.spacing_mm)
    avail = prof.mean_mn
    drag = drag_n * 1e3
    return PayloadReport(
        drag_mn=drag, available_mean_mn=avail, margin=avail / drag if drag > 0 else np.inf
    )
