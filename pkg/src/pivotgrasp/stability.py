"""Stable-region computation over the grasp configuration space.

A configuration (l_a, alpha, beta) is stable when the selected LP is
feasible: `force_balance` asks whether the contacts can cancel gravity,
`form_closure` whether they immobilise the object outright. Sweeps grid the
(alpha, beta) plane for fixed l_a; `beta_upper_bound` locates the tilt at
which force balance is first lost.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import GraspConfig, ObjectSpec, validate_config
from .lp import solve_force_balance, solve_form_closure
from .wrenches import FrictionSet, contact_wrench_basis, gravity_wrench

MODES = ("force_balance", "form_closure")

HALF_PI = math.pi / 2


class SweepCellError(RuntimeError):
    """A cell evaluation failed; carries the offending (alpha, beta)."""

    def __init__(self, alpha: float, beta: float, cause: Exception):
        super().__init__(f"cell (alpha={alpha!r}, beta={beta!r}) failed: {cause}")
        self.alpha = alpha
        self.beta = beta


def degree_grid(start_deg: float, stop_deg: float, step_deg: float) -> tuple[float, ...]:
    """Inclusive degree grid converted to radians, built from integer multiples."""
    n = round((stop_deg - start_deg) / step_deg)
    return tuple(math.radians(start_deg + i * step_deg) for i in range(n + 1))


def default_alpha_grid(step_deg: float = 0.5) -> tuple[float, ...]:
    """Alpha grid over (0, 90) degrees, endpoints excluded."""
    return degree_grid(step_deg, 90.0 - step_deg, step_deg)


def default_beta_grid(step_deg: float = 0.5) -> tuple[float, ...]:
    """Beta grid over [0, 90] degrees inclusive."""
    return degree_grid(0.0, 90.0, step_deg)


DEFAULT_LA_FAMILY = (0.5, 0.6, 0.7, 0.8, 0.9)


def is_stable(
    obj: ObjectSpec, cfg: GraspConfig, friction: FrictionSet, mode: str = "force_balance"
) -> bool:
    """Whether the selected LP is feasible at this configuration."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    validate_config(cfg, obj)
    basis = contact_wrench_basis(obj, cfg, friction)
    if mode == "force_balance":
        return solve_force_balance(basis, gravity_wrench(obj)).feasible
    return solve_form_closure(basis).feasible


@dataclass(frozen=True)
class RegionMap:
    """Boolean feasibility grid over the (alpha, beta) plane for fixed l_a."""

    mode: str
    l_a: float
    delta: float
    friction: FrictionSet
    alpha_axis: tuple[float, ...]
    beta_axis: tuple[float, ...]
    feasible: np.ndarray  # shape (len(alpha_axis), len(beta_axis)), bool

    def __post_init__(self):
        if self.feasible.shape != (len(self.alpha_axis), len(self.beta_axis)):
            raise ValueError("feasible matrix shape does not match axes")

    def feasible_cells(self) -> int:
        return int(self.feasible.sum())


def _check_axes(alpha_axis, beta_axis) -> None:
    if any(b <= a for a, b in zip(alpha_axis, alpha_axis[1:])):
        raise ValueError("alpha axis must be strictly increasing")
    if any(b <= a for a, b in zip(beta_axis, beta_axis[1:])):
        raise ValueError("beta axis must be strictly increasing")
    if alpha_axis and not (0.0 < alpha_axis[0] and alpha_axis[-1] < HALF_PI):
        raise ValueError("alpha axis must lie inside (0, pi/2)")
    if beta_axis and not (0.0 <= beta_axis[0] and beta_axis[-1] <= HALF_PI):
        raise ValueError("beta axis must lie inside [0, pi/2]")


def _row_stability(
    obj: ObjectSpec,
    friction: FrictionSet,
    l_a: float,
    delta: float,
    alpha: float,
    beta_axis: tuple[float, ...],
    mode: str,
) -> list[bool]:
    offset = obj.D / 2 - delta
    row = []
    for beta in beta_axis:
        try:
            cfg = GraspConfig(l_a=l_a, alpha=alpha, beta=beta, delta=delta, hole_offset=offset)
            row.append(is_stable(obj, cfg, friction, mode))
        except Exception as e:  # attach grid coordinates for diagnosis
            raise SweepCellError(alpha, beta, e) from e
    return row


def _row_worker(args) -> list[bool]:
    return _row_stability(*args)


def region_sweep(
    obj: ObjectSpec,
    friction: FrictionSet,
    l_a: float,
    alpha_grid: tuple[float, ...],
    beta_grid: tuple[float, ...],
    mode: str = "force_balance",
    *,
    delta: float,
    workers: int = 1,
) -> RegionMap:
    """Evaluate stability on the full (alpha, beta) grid.

    Cells are pure functions of their coordinates, so the result is
    identical regardless of `workers`; rows are assembled in grid order.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    _check_axes(alpha_grid, beta_grid)
    tasks = [(obj, friction, l_a, delta, alpha, beta_grid, mode) for alpha in alpha_grid]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_worker, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        rows = [_row_worker(t) for t in tasks]
    feasible = np.array(rows, dtype=bool).reshape(len(alpha_grid), len(beta_grid))
    return RegionMap(
        mode=mode,
        l_a=l_a,
        delta=delta,
        friction=friction,
        alpha_axis=tuple(alpha_grid),
        beta_axis=tuple(beta_grid),
        feasible=feasible,
    )


@dataclass(frozen=True)
class GraspPlaneMap:
    """Feasibility grid over the (l_a, beta) plane for fixed alpha.

    This is the companion map for overlaying simulated grasp trajectories,
    whose samples live in the same plane.
    """

    mode: str
    alpha: float
    delta: float
    friction: FrictionSet
    la_axis: tuple[float, ...]
    beta_axis: tuple[float, ...]
    feasible: np.ndarray  # shape (len(la_axis), len(beta_axis)), bool


def grasp_plane_sweep(
    obj: ObjectSpec,
    friction: FrictionSet,
    alpha: float,
    la_grid: tuple[float, ...],
    beta_grid: tuple[float, ...],
    mode: str = "force_balance",
    *,
    delta: float,
    workers: int = 1,
) -> GraspPlaneMap:
    """Evaluate stability over (l_a, beta) at fixed alpha."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if any(b <= a for a, b in zip(la_grid, la_grid[1:])):
        raise ValueError("l_a axis must be strictly increasing")
    if la_grid and not (0.0 < la_grid[0] and la_grid[-1] <= 1.0):
        raise ValueError("l_a axis must lie inside (0, 1]")
    if any(b <= a for a, b in zip(beta_grid, beta_grid[1:])):
        raise ValueError("beta axis must be strictly increasing")
    tasks = [(obj, friction, la, delta, alpha, tuple(beta_grid), mode) for la in la_grid]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_worker, tasks))
    else:
        rows = [_row_worker(t) for t in tasks]
    feasible = np.array(rows, dtype=bool).reshape(len(la_grid), len(beta_grid))
    return GraspPlaneMap(
        mode=mode,
        alpha=alpha,
        delta=delta,
        friction=friction,
        la_axis=tuple(la_grid),
        beta_axis=tuple(beta_grid),
        feasible=feasible,
    )


@dataclass(frozen=True)
class BetaBound:
    """Result of the beta upper-bound search.

    status is one of "finite" (value holds the first feasible-to-infeasible
    transition), "not_finite" (force balance holds through 90 degrees) and
    "infeasible_at_start" (already infeasible at beta = 0). When several
    transitions appear during coarse bracketing they are all listed and the
    first is the value.
    """

    value: float | None
    finite: bool
    status: str
    transitions: tuple[float, ...] = ()


def beta_upper_bound(
    obj: ObjectSpec,
    friction: FrictionSet,
    l_a: float,
    alpha: float,
    *,
    delta: float,
    resolution: float = 1e-4,
    coarse_step_deg: float = 1.0,
) -> BetaBound:
    """Largest tilt up to which force balance holds, for fixed (l_a, alpha).

    Brackets feasibility transitions on a coarse degree grid, then bisects
    each bracket down to `resolution` radians.
    """
    offset = obj.D / 2 - delta

    def feasible(beta: float) -> bool:
        cfg = GraspConfig(l_a=l_a, alpha=alpha, beta=beta, delta=delta, hole_offset=offset)
        return is_stable(obj, cfg, friction, "force_balance")

    if not feasible(0.0):
        return BetaBound(value=None, finite=False, status="infeasible_at_start")

    coarse = degree_grid(0.0, 90.0, coarse_step_deg)
    transitions = []
    prev = 0.0
    prev_ok = True
    for beta in coarse[1:]:
        ok = feasible(beta)
        if prev_ok and not ok:
            lo, hi = prev, beta
            while hi - lo > resolution / 4:
                mid = 0.5 * (lo + hi)
                if feasible(mid):
                    lo = mid
                else:
                    hi = mid
            transitions.append(0.5 * (lo + hi))
        prev, prev_ok = beta, ok
    if not transitions:
        return BetaBound(value=None, finite=False, status="not_finite")
    return BetaBound(
        value=transitions[0], finite=True, status="finite", transitions=tuple(transitions)
    )


def min_alpha(
    obj: ObjectSpec,
    friction: FrictionSet,
    l_a: float,
    beta: float,
    *,
    delta: float,
    step_deg: float = 0.5,
) -> float | None:
    """Smallest grid alpha with force balance feasible at (l_a, beta), or None."""
    offset = obj.D / 2 - delta
    for alpha in default_alpha_grid(step_deg):
        cfg = GraspConfig(l_a=l_a, alpha=alpha, beta=beta, delta=delta, hole_offset=offset)
        if is_stable(obj, cfg, friction, "force_balance"):
            return alpha
    return None


# ---------------------------------------------------------------------------
# Serialization (CSV grid + JSON sidecar) for external plotting
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return f"{v + 0.0:.9g}"  # + 0.0 normalises negative zero


def region_map_csv(rmap: RegionMap) -> str:
    """Grid as CSV: header row of beta values (deg), first column alpha (deg), cells 0/1."""
    lines = ["alpha_deg/beta_deg," + ",".join(_fmt(math.degrees(b)) for b in rmap.beta_axis)]
    for i, alpha in enumerate(rmap.alpha_axis):
        cells = ",".join("1" if rmap.feasible[i, j] else "0" for j in range(len(rmap.beta_axis)))
        lines.append(_fmt(math.degrees(alpha)) + "," + cells)
    return "\n".join(lines) + "\n"


def grasp_plane_csv(gmap: GraspPlaneMap) -> str:
    """Grid as CSV: header row of beta values (deg), first column l_a, cells 0/1."""
    lines = ["l_a/beta_deg," + ",".join(_fmt(math.degrees(b)) for b in gmap.beta_axis)]
    for i, la in enumerate(gmap.la_axis):
        cells = ",".join("1" if gmap.feasible[i, j] else "0" for j in range(len(gmap.beta_axis)))
        lines.append(_fmt(la) + "," + cells)
    return "\n".join(lines) + "\n"


def _grid_meta(axis_rad: tuple[float, ...]) -> dict:
    degs = [math.degrees(v) for v in axis_rad]
    return {
        "start_deg": float(_fmt(degs[0])),
        "stop_deg": float(_fmt(degs[-1])),
        "count": len(degs),
    }


def region_map_meta(rmap: RegionMap, obj: ObjectSpec) -> dict:
    """JSON sidecar content describing a region map."""
    return {
        "object": {
            "name": obj.name,
            "a_mm": obj.a,
            "b_mm": obj.b,
            "D_mm": obj.D,
            "d_mm": obj.d,
            "cylinder": obj.cylinder,
        },
        "friction": {
            "mu_S": rmap.friction.mu_s,
            "mu_H": rmap.friction.mu_h,
            "mu_G": rmap.friction.mu_g,
        },
        "l_a": rmap.l_a,
        "delta_mm": float(_fmt(rmap.delta)),
        "mode": rmap.mode,
        "alpha_grid": _grid_meta(rmap.alpha_axis),
        "beta_grid": _grid_meta(rmap.beta_axis),
        "feasible_cells": rmap.feasible_cells(),
    }


def grasp_plane_meta(gmap: GraspPlaneMap, obj: ObjectSpec) -> dict:
    return {
        "object": {
            "name": obj.name,
            "a_mm": obj.a,
            "b_mm": obj.b,
            "D_mm": obj.D,
            "d_mm": obj.d,
            "cylinder": obj.cylinder,
        },
        "friction": {
            "mu_S": gmap.friction.mu_s,
            "mu_H": gmap.friction.mu_h,
            "mu_G": gmap.friction.mu_g,
        },
        "alpha_rad": float(_fmt(gmap.alpha)),
        "delta_mm": float(_fmt(gmap.delta)),
        "mode": gmap.mode,
        "la_grid": {"start": gmap.la_axis[0], "stop": gmap.la_axis[-1], "count": len(gmap.la_axis)},
        "beta_grid": _grid_meta(gmap.beta_axis),
    }
