"""Quasi-static grasp stability analysis and pivot maneuver planning for hollow objects."""

from .geometry import (
    ConfigError,
    GeometryError,
    GraspConfig,
    GripperSpec,
    ObjectSpec,
    config_from_delta,
    grasp_config,
    hole_contact_depth,
    hole_contact_offset,
    load_catalog,
    validate_config,
)
from .lp import (
    LpDegeneracyError,
    LpOutcome,
    LpProblem,
    oracle_force_balance,
    solve_force_balance,
    solve_form_closure,
    solve_problem,
)
from .maneuver import (
    GraspTrajectory,
    GripperPose,
    PivotPlan,
    align_phase,
    constant_la_schedule,
    linear_la_schedule,
    plan_pivot,
    simulate_grasp_trajectory,
)
from .stability import (
    BetaBound,
    GraspPlaneMap,
    RegionMap,
    beta_upper_bound,
    default_alpha_grid,
    default_beta_grid,
    grasp_plane_sweep,
    is_stable,
    min_alpha,
    region_sweep,
)
from .stats import ConfidenceInterval, TrialRecord, batch_ci, wilson_ci
from .wrenches import (
    FRICTIONLESS,
    FrictionSet,
    Wrench,
    WrenchBasis,
    contact_wrench_basis,
    gravity_wrench,
)

__version__ = "0.1.0"

__all__ = [
    "BetaBound",
    "ConfidenceInterval",
    "ConfigError",
    "FRICTIONLESS",
    "FrictionSet",
    "GeometryError",
    "GraspConfig",
    "GraspPlaneMap",
    "GraspTrajectory",
    "GripperPose",
    "GripperSpec",
    "LpDegeneracyError",
    "LpOutcome",
    "LpProblem",
    "ObjectSpec",
    "PivotPlan",
    "RegionMap",
    "TrialRecord",
    "Wrench",
    "WrenchBasis",
    "align_phase",
    "batch_ci",
    "beta_upper_bound",
    "config_from_delta",
    "constant_la_schedule",
    "contact_wrench_basis",
    "default_alpha_grid",
    "default_beta_grid",
    "grasp_config",
    "grasp_plane_sweep",
    "gravity_wrench",
    "hole_contact_depth",
    "hole_contact_offset",
    "is_stable",
    "linear_la_schedule",
    "load_catalog",
    "min_alpha",
    "oracle_force_balance",
    "plan_pivot",
    "region_sweep",
    "simulate_grasp_trajectory",
    "solve_force_balance",
    "solve_form_closure",
    "solve_problem",
    "validate_config",
    "wilson_ci",
]
