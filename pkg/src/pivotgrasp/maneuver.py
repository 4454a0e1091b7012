"""Grasp / tilt / align maneuver planning and grasp-trajectory simulation.

World frame: the ground is y = 0, gravity points along -y, and a lying
object has its long axis along +x. The maneuver rotates the object about
its ground corner from tilt beta = 0 to vertical, then aligns the gripper
with the object axis. Sliding of the surface contact during the tilt is a
prescribed input schedule l_a(beta), not a predicted output: the contact
may slide in practice but no slip law is modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .geometry import GraspConfig, ObjectSpec, validate_config
from .stability import is_stable

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class GripperPose:
    """Planar pose of the gripper: jaw midpoint position and axis angle."""

    x: float
    y: float
    phi: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.x, self.y, self.phi))):
            raise ValueError("pose components must be finite")


@dataclass(frozen=True)
class PivotPlan:
    """Circular-arc gripper trajectory about the object's ground corner."""

    p_i: GripperPose
    p_c: tuple[float, float]
    r: float
    theta: float
    waypoints: tuple[GripperPose, ...]


def _rot(phi: float, x: float, y: float) -> tuple[float, float]:
    c, s = math.cos(phi), math.sin(phi)
    return (c * x - s * y, s * x + c * y)


def _contact_points(
    obj: ObjectSpec, cfg: GraspConfig, center: tuple[float, float], phi: float
) -> tuple[tuple[float, float], tuple[float, float]]:
    """World positions of the surface contact S and the in-hole contact H."""
    l = 2.0 * obj.a * cfg.l_a
    sx, sy = _rot(phi, obj.a - l, obj.b)
    hx, hy = _rot(phi, obj.a, obj.b - cfg.delta)
    return (center[0] + sx, center[1] + sy), (center[0] + hx, center[1] + hy)


def plan_pivot(
    obj: ObjectSpec,
    cfg: GraspConfig,
    object_pose: GripperPose,
    theta: float,
    n_waypoints: int = 64,
    *,
    beta_ub: float | None = None,
) -> PivotPlan:
    """Plan the tilt phase: rotate the grasp rigidly about the ground corner.

    `object_pose` is the pose of the object's centre (phi = current tilt).
    The pivot centre is the corner diagonally opposite the hole-side top
    edge; the initial gripper pose is the midpoint of the two finger
    contacts at angle alpha relative to the object. When `beta_ub` is given
    the rotation is clamped so the final tilt does not exceed it.
    """
    validate_config(cfg, obj)
    if n_waypoints < 2:
        raise ValueError("need at least two waypoints")
    if theta <= 0 or theta > HALF_PI:
        raise ValueError("pivot angle must lie in (0, pi/2]")
    if beta_ub is not None:
        theta = min(theta, beta_ub - object_pose.phi)
        if theta <= 0:
            raise ValueError("object tilt already at or beyond the requested bound")

    center = (object_pose.x, object_pose.y)
    gx, gy = _rot(object_pose.phi, -obj.a, -obj.b)
    p_c = (center[0] + gx, center[1] + gy)

    s, h = _contact_points(obj, cfg, center, object_pose.phi)
    p_i = GripperPose(
        x=0.5 * (s[0] + h[0]),
        y=0.5 * (s[1] + h[1]),
        phi=cfg.alpha + object_pose.phi,
    )
    if p_i.y < 0:
        raise ValueError("initial gripper pose is below the ground plane")

    r = math.hypot(p_i.x - p_c[0], p_i.y - p_c[1])
    waypoints = []
    for k in range(n_waypoints):
        t = theta * k / (n_waypoints - 1)
        dx, dy = _rot(t, p_i.x - p_c[0], p_i.y - p_c[1])
        waypoints.append(GripperPose(p_c[0] + dx, p_c[1] + dy, p_i.phi + t))
    return PivotPlan(p_i=p_i, p_c=p_c, r=r, theta=theta, waypoints=tuple(waypoints))


def align_phase(
    obj: ObjectSpec,
    cfg: GraspConfig,
    n_waypoints: int,
    *,
    hole_contact: tuple[float, float] | None = None,
) -> tuple[GripperPose, ...]:
    """Plan the align phase: rotate the gripper onto the (vertical) object axis.

    The gripper turns about the inserted fingertip contact, interpolating
    its angle relative to the object axis uniformly from alpha down to zero.
    By default the object stands with its ground corner at the origin;
    `hole_contact` overrides the fingertip's world position.
    """
    validate_config(cfg, obj)
    if n_waypoints < 2:
        raise ValueError("need at least two waypoints")
    if hole_contact is None:
        center = (-obj.b, obj.a)  # ground corner at the origin, axis up
        _, h = _contact_points(obj, cfg, center, HALF_PI)
    else:
        h = hole_contact
    # Jaw midpoint offset from the fingertip is rigid: half the H-to-S chord.
    l = 2.0 * obj.a * cfg.l_a
    ox, oy = _rot(HALF_PI, -l / 2, cfg.delta / 2)
    p0 = (h[0] + ox, h[1] + oy)
    phi0 = HALF_PI + cfg.alpha

    poses = []
    for k in range(n_waypoints):
        step = -cfg.alpha * k / (n_waypoints - 1)
        dx, dy = _rot(step, p0[0] - h[0], p0[1] - h[1])
        poses.append(GripperPose(h[0] + dx, h[1] + dy, phi0 + step))
    return tuple(poses)


# ---------------------------------------------------------------------------
# Grasp-trajectory simulation through (beta, l_a) space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrajectorySample:
    beta: float
    l_a: float
    stable: bool


@dataclass(frozen=True)
class GraspTrajectory:
    """Stability along a tilt with a prescribed sliding schedule.

    Samples advance in beta while l_a may only shrink (sliding shortens the
    contact distance); marks are the schedule endpoints.
    """

    samples: tuple[TrajectorySample, ...]
    initial_mark: tuple[float, float] | None
    final_mark: tuple[float, float] | None


def linear_la_schedule(
    la_start: float, la_end: float, beta_end: float = HALF_PI
) -> Callable[[float], float]:
    """Linear l_a(beta) from la_start at beta = 0 to la_end at beta_end."""
    if la_end > la_start:
        raise ValueError("sliding can only shorten l_a")

    def schedule(beta: float) -> float:
        frac = min(max(beta / beta_end, 0.0), 1.0)
        return la_start + (la_end - la_start) * frac

    return schedule


def constant_la_schedule(l_a: float) -> Callable[[float], float]:
    return lambda beta: l_a


def simulate_grasp_trajectory(
    obj: ObjectSpec,
    friction,
    alpha: float,
    la_schedule: Callable[[float], float],
    beta_grid: tuple[float, ...],
    *,
    delta: float,
) -> GraspTrajectory:
    """Evaluate force-balance stability along the prescribed schedule."""
    if any(b2 < b1 for b1, b2 in zip(beta_grid, beta_grid[1:])):
        raise ValueError("beta grid must be non-decreasing")
    if not beta_grid:
        return GraspTrajectory(samples=(), initial_mark=None, final_mark=None)

    las = [la_schedule(beta) for beta in beta_grid]
    if any(l2 > l1 + 1e-12 for l1, l2 in zip(las, las[1:])):
        raise ValueError("l_a schedule must be non-increasing in beta")

    offset = obj.D / 2 - delta
    samples = []
    for beta, la in zip(beta_grid, las):
        cfg = GraspConfig(l_a=la, alpha=alpha, beta=beta, delta=delta, hole_offset=offset)
        samples.append(TrajectorySample(beta=beta, l_a=la, stable=is_stable(obj, cfg, friction)))
    return GraspTrajectory(
        samples=tuple(samples),
        initial_mark=(beta_grid[0], las[0]),
        final_mark=(beta_grid[-1], las[-1]),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _fmt(v: float) -> float:
    return float(f"{v + 0.0:.9g}")  # + 0.0 normalises negative zero


def plan_to_dict(plan: PivotPlan) -> dict:
    """JSON document for a pivot plan."""
    return {
        "p_c": [_fmt(plan.p_c[0]), _fmt(plan.p_c[1])],
        "r": _fmt(plan.r),
        "theta_rad": _fmt(plan.theta),
        "waypoints": [
            {"x": _fmt(w.x), "y": _fmt(w.y), "phi": _fmt(w.phi)} for w in plan.waypoints
        ],
    }


def poses_to_dicts(poses: tuple[GripperPose, ...]) -> list[dict]:
    return [{"x": _fmt(p.x), "y": _fmt(p.y), "phi": _fmt(p.phi)} for p in poses]


def trajectory_csv(traj: GraspTrajectory) -> str:
    """CSV rows (beta_deg, l_a, stable) for overlay plotting on region maps."""
    lines = ["beta_deg,l_a,stable"]
    for s in traj.samples:
        lines.append(f"{math.degrees(s.beta):.9g},{s.l_a:.9g},{1 if s.stable else 0}")
    return "\n".join(lines) + "\n"
