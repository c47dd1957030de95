"""Kinematics and control toolkit for metachronal swimmer mechanisms."""

from ._core import (
    AngleTrace,
    AppendageGeometry,
    DomainError,
    GammaParams,
    GearChain,
    IoError,
    KinematicState,
    LinkAngles,
    MetachronalConfig,
    ParseError,
    ReConvention,
    ScheduleOptions,
    StrokeProfile,
    SwimmerParams,
    TraceMetrics,
    __version__,
    alpha_profile,
    angles_from_markers,
    apply_backlash,
    beta_profile,
    build_schedule,
    chain_forward,
    chain_inverse,
    compare_traces,
    composite_ratio,
    default_chains,
    epicyclic_step,
    gamma_profile,
    link_angles,
    markers_for_pose,
    metachronal_offsets,
    modulus,
    peak_to_peak,
    pleopod_pose_3d,
    pleopod_tip,
    primitive_radius,
    reynolds,
    sample,
    scaled_frequency,
    servo_angles_for_pose,
    tip_speed,
    tip_trajectory,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
