"""Quasi-static field model of the three-magnet actuation setup.

Two fixed block magnets straddle the workspace along y and produce a uniform
bias field at the centre; a motor-driven magnet above the workspace rotates in
the x-z plane and adds a time-varying component.  All magnets are treated as
point dipoles, which is accurate to a few percent at the working distances
(magnet extent / distance < 0.3) and keeps every quantity closed-form at the
workspace centre.

With the rotation phase ``alpha`` defined so that alpha = 0 points the rotating
moment straight down (-z), the centre field is

    Bx = -mu0 m_r sin(alpha) / (4 pi h^3)        (rotor, transverse)
    By =  mu0 m_s / (pi w^3)                     (static pair, on-axis)
    Bz = -mu0 m_r cos(alpha) / (2 pi h^3)        (rotor, on-axis)

where h is the rotor height and w the centre-to-magnet offset of the static
pair.  The static pair is symmetric about the centre, so it contributes no
gradient there; the rotating magnet contributes the full gradient tensor.

Field vectors are returned in mT for positions given in mm.  Gradients come
out in mT/mm, numerically identical to T/m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import MU0

# Central-difference step for field Jacobians, mm.  Small against the 190 mm
# source distance (truncation ~(step/h)^2 ~ 3e-7) but large against float eps.
GRAD_STEP_MM = 0.1


def magnet_moment_from_remanence(remanence_t: float, volume_mm3: float) -> float:
    """Dipole moment of a uniformly magnetised magnet, A m^2.

    m = Br V / mu0 for remanence ``remanence_t`` in tesla and magnet volume
    ``volume_mm3`` in mm^3.
    """
    return remanence_t / MU0 * volume_mm3 * 1e-9


@dataclass(frozen=True)
class DipoleSource:
    """A point dipole: ``position`` in mm (shape (3,)), ``moment`` in A m^2."""

    position: np.ndarray
    moment: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "moment", np.asarray(self.moment, dtype=float))
        if self.position.shape != (3,) or self.moment.shape != (3,):
            raise ValueError("position and moment must have shape (3,)")


def dipole_field(point_mm, source: DipoleSource) -> np.ndarray:
    """Field of a single point dipole at ``point_mm``, in mT.

    B = (mu0 / 4 pi) (3 rhat (rhat . m) - m) / r^3, evaluated in SI and
    converted.  Raises ``ZeroDivisionError`` semantics via numpy at r = 0;
    callers keep sample points away from sources.
    """
    r = (np.asarray(point_mm, dtype=float) - source.position) * 1e-3
    rn = float(np.linalg.norm(r))
    rhat = r / rn
    b_t = MU0 / (4.0 * np.pi) * (3.0 * rhat * (rhat @ source.moment) - source.moment) / rn**3
    return b_t * 1e3


@dataclass(frozen=True)
class ActuationSetup:
    """Geometry and strength of the three-magnet drive.

    Parameters
    ----------
    static_moment : float
        Moment of each static block magnet, A m^2.
    rotor_moment : float
        Moment of the rotating magnet, A m^2.
    static_offset_mm : float
        Distance from workspace centre to each static magnet along y, mm.
    rotor_height_mm : float
        Height of the rotating magnet centre above the workspace plane, mm.
    """

    static_moment: float = 205.4
    rotor_moment: float = 133.0
    static_offset_mm: float = 259.75
    rotor_height_mm: float = 190.5

    def __post_init__(self):
        if self.static_offset_mm <= 0 or self.rotor_height_mm <= 0:
            raise ValueError("setup distances must be positive")

    def sources(self, alpha_deg: float) -> list[DipoleSource]:
        """The three dipoles at rotation phase ``alpha_deg``."""
        a = np.radians(alpha_deg)
        w = self.static_offset_mm
        return [
            DipoleSource(np.array([0.0, w, 0.0]), np.array([0.0, self.static_moment, 0.0])),
            DipoleSource(np.array([0.0, -w, 0.0]), np.array([0.0, self.static_moment, 0.0])),
            DipoleSource(
                np.array([0.0, 0.0, self.rotor_height_mm]),
                self.rotor_moment * np.array([np.sin(a), 0.0, -np.cos(a)]),
            ),
        ]

    # -- closed forms at the workspace centre ------------------------------

    def static_field_mt(self) -> float:
        """Bias field of the static pair at the centre, mT (+y)."""
        w = self.static_offset_mm * 1e-3
        return MU0 * self.static_moment / (np.pi * w**3) * 1e3

    def rotor_field_max_mt(self) -> float:
        """Peak magnitude of the rotating-magnet field at the centre, mT.

        Reached at alpha = 0/180 deg where the moment is vertical and the
        centre sits on the dipole axis.
        """
        h = self.rotor_height_mm * 1e-3
        return MU0 * self.rotor_moment / (2.0 * np.pi * h**3) * 1e3

    def center_field_mt(self, alpha_deg: float) -> np.ndarray:
        """Centre field at phase ``alpha_deg`` from the closed forms, mT."""
        a = np.radians(alpha_deg)
        bz = self.rotor_field_max_mt()
        return np.array(
            [-0.5 * bz * np.sin(a), self.static_field_mt(), -bz * np.cos(a)]
        )

    def center_gradient_tensor(self, alpha_deg: float) -> np.ndarray:
        """Jacobian dB_i/dx_j at the centre, T/m, from the closed forms.

        Only the rotating magnet contributes; the symmetric static pair
        cancels there.  K = 3 mu0 m_r / (4 pi h^4).
        """
        a = np.radians(alpha_deg)
        h = self.rotor_height_mm * 1e-3
        k = 3.0 * MU0 * self.rotor_moment / (4.0 * np.pi * h**4)
        g = np.zeros((3, 3))
        g[0, 0] = g[1, 1] = k * np.cos(a)
        g[2, 2] = -2.0 * k * np.cos(a)
        g[0, 2] = g[2, 0] = -k * np.sin(a)
        return g

    def pose_angle_max_deg(self) -> float:
        """Largest field elevation over a rotation cycle, degrees.

        atan(Bz_max / By): the tilt the field reaches when the rotating
        moment points straight down or up.
        """
        return float(np.degrees(np.arctan2(self.rotor_field_max_mt(), self.static_field_mt())))

    def azimuth_swing_deg(self) -> float:
        """Peak-to-peak azimuth excursion of the field over a cycle, degrees.

        The transverse rotor component Bx reaches +-Bz_max/2 against the
        static By, so the azimuth sweeps 2 atan(Bz_max / (2 By)).
        """
        bx = 0.5 * self.rotor_field_max_mt()
        return float(2.0 * np.degrees(np.arctan2(bx, self.static_field_mt())))


def height_for_pose_angle(setup: ActuationSetup, pose_deg: float) -> float:
    """Rotor height (mm) that yields a given maximum field elevation.

    Inverts atan(Bz_max(h) / By) = pose_deg for h at fixed static field.
    ``pose_deg`` must lie in (0, 90).
    """
    if not 0.0 < pose_deg < 90.0:
        raise ValueError("pose angle must be in (0, 90) degrees")
    by_t = setup.static_field_mt() * 1e-3
    h_m = (MU0 * setup.rotor_moment / (2.0 * np.pi * by_t * np.tan(np.radians(pose_deg)))) ** (
        1.0 / 3.0
    )
    return float(h_m * 1e3)


@dataclass(frozen=True)
class FieldSample:
    """Field vector (mT) and Jacobian dB_i/dx_j (T/m) at one point."""

    b_mt: np.ndarray
    grad: np.ndarray


@dataclass(frozen=True)
class FieldOrientation:
    """Spherical decomposition of a field vector.

    ``azimuth_deg`` is measured in the x-y plane from +x (atan2(By, Bx)),
    ``elevation_deg`` from the horizontal plane towards +z, ``magnitude_mt``
    is |B|.
    """

    azimuth_deg: float
    elevation_deg: float
    magnitude_mt: float


def superposed_field(setup: ActuationSetup, point_mm, alpha_deg: float) -> np.ndarray:
    """Full three-dipole superposition at ``point_mm``, mT."""
    p = np.asarray(point_mm, dtype=float)
    return sum(dipole_field(p, s) for s in setup.sources(alpha_deg))


def field_sample(setup: ActuationSetup, point_mm, alpha_deg: float) -> FieldSample:
    """Superposed field and central-difference Jacobian at one point.

    The Jacobian is differenced with step ``GRAD_STEP_MM``; in mT/mm it is
    numerically the gradient in T/m.
    """
    p = np.asarray(point_mm, dtype=float)
    b = superposed_field(setup, p, alpha_deg)
    grad = np.zeros((3, 3))
    for j in range(3):
        dp = np.zeros(3)
        dp[j] = GRAD_STEP_MM
        bp = superposed_field(setup, p + dp, alpha_deg)
        bm = superposed_field(setup, p - dp, alpha_deg)
        grad[:, j] = (bp - bm) / (2.0 * GRAD_STEP_MM)
    return FieldSample(b_mt=b, grad=grad)


def field_orientation(b_mt) -> FieldOrientation:
    """Azimuth/elevation/magnitude of a field vector given in mT."""
    b = np.asarray(b_mt, dtype=float)
    return FieldOrientation(
        azimuth_deg=float(np.degrees(np.arctan2(b[1], b[0]))),
        elevation_deg=float(np.degrees(np.arctan2(b[2], np.hypot(b[0], b[1])))),
        magnitude_mt=float(np.linalg.norm(b)),
    )


def magnitude_gradient(sample: FieldSample) -> np.ndarray:
    """Gradient of |B| at a sample, T/m: (dB/dx)^T bhat."""
    bn = float(np.linalg.norm(sample.b_mt))
    if bn == 0.0:
        return np.zeros(3)
    return sample.grad.T @ (sample.b_mt / bn)


def orientation_sweep(setup: ActuationSetup, alphas_deg, point_mm=(0.0, 0.0, 0.0)):
    """Orientation trace over a list of rotation phases.

    Returns ``(azimuth_deg, elevation_deg, magnitude_mt)`` arrays aligned
    with ``alphas_deg``, evaluated from the full superposition at
    ``point_mm``.
    """
    az, el, mag = [], [], []
    for a in np.asarray(alphas_deg, dtype=float):
        o = field_orientation(superposed_field(setup, point_mm, a))
        az.append(o.azimuth_deg)
        el.append(o.elevation_deg)
        mag.append(o.magnitude_mt)
    return np.array(az), np.array(el), np.array(mag)


def cycle_gradient_extrema(
    setup: ActuationSetup, point_mm=(0.0, 0.0, 0.0), step_deg: float = 5.0
) -> dict:
    """Worst-case field derivatives at a point over a full rotation cycle.

    Returns a dict with

    ``max_magnitude_gradient``
        max over the cycle of max_k |d|B|/dx_k|, T/m.  This is the
        force-per-moment figure: a dipole tracking the field direction feels
        F_k = m d|B|/dx_k.
    ``max_tensor_component``
        max over the cycle of max_ij |dB_i/dx_j|, T/m, for reference.
    """
    worst_mag = 0.0
    worst_tensor = 0.0
    for a in np.arange(0.0, 360.0, step_deg):
        s = field_sample(setup, point_mm, a)
        worst_mag = max(worst_mag, float(np.abs(magnitude_gradient(s)).max()))
        worst_tensor = max(worst_tensor, float(np.abs(s.grad).max()))
    return {
        "max_magnitude_gradient": worst_mag,
        "max_tensor_component": worst_tensor,
    }
