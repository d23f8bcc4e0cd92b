"""Simulation and optimisation toolkit for permanent-magnet actuated
crawling millirobot convoys.

Layers: ``magnetics`` (three-dipole field model), ``gait`` (anchor-alternating
crawl kinematics), ``foot`` (spiked-foot penetration geometry), ``convoy``
(phase coupling and linked crawling), ``harness`` (sweeps, validation, CLI),
``teleop`` (interactive driving over a websocket).
"""

from .convoy import (
    ConvoyConfig,
    ConvoyTrace,
    ForceProfile,
    PayloadReport,
    convoy_force_profile,
    convoy_step,
    local_phase_lag,
    payload_feasibility,
)
from .foot import (
    FootDesign,
    FootProfile,
    LiftBudget,
    PenetrationResult,
    foot_profile,
    lifting_force_budget,
    penetration,
    spike_angle_sweep,
)
from .gait import (
    GaitState,
    GaitTrace,
    TrajectoryError,
    TrajectoryResult,
    UnitGeometry,
    crawl_velocity,
    foot_path,
    step_simulate,
    stride_length,
    trajectory_follow,
)
from .magnetics import (
    ActuationSetup,
    DipoleSource,
    FieldOrientation,
    FieldSample,
    cycle_gradient_extrema,
    dipole_field,
    field_orientation,
    field_sample,
    height_for_pose_angle,
    magnet_moment_from_remanence,
    magnitude_gradient,
    orientation_sweep,
    superposed_field,
)

__version__ = "0.1.0"

__all__ = [
    "ActuationSetup",
    "ConvoyConfig",
    "ConvoyTrace",
    "DipoleSource",
    "FieldOrientation",
    "FieldSample",
    "FootDesign",
    "FootProfile",
    "ForceProfile",
    "GaitState",
    "GaitTrace",
    "LiftBudget",
    "PayloadReport",
    "PenetrationResult",
    "TrajectoryError",
    "TrajectoryResult",
    "UnitGeometry",
    "convoy_force_profile",
    "convoy_step",
    "crawl_velocity",
    "cycle_gradient_extrema",
    "dipole_field",
    "field_orientation",
    "field_sample",
    "foot_path",
    "foot_profile",
    "height_for_pose_angle",
    "lifting_force_budget",
    "local_phase_lag",
    "magnet_moment_from_remanence",
    "magnitude_gradient",
    "orientation_sweep",
    "payload_feasibility",
    "penetration",
    "spike_angle_sweep",
    "step_simulate",
    "stride_length",
    "superposed_field",
    "trajectory_follow",
]
