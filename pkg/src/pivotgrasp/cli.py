"""Command-line interface: analysis subcommands emitting CSV/JSON artifacts.

Subcommands: region, beta-ub, traj, simulate, wrench, ci. All numeric file
output uses 9 significant digits and carries no timestamps, so reruns with
identical inputs produce byte-identical files. Angle arguments take a `deg`
or `rad` suffix; bare numbers are radians.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .geometry import (
    ConfigError,
    GeometryError,
    config_from_delta,
    hole_contact_depth,
    hole_contact_offset,
    load_catalog,
    with_gripper_width,
)
from .maneuver import (
    GripperPose,
    align_phase,
    linear_la_schedule,
    plan_pivot,
    plan_to_dict,
    poses_to_dicts,
    simulate_grasp_trajectory,
    trajectory_csv,
)
from .stability import (
    beta_upper_bound,
    default_alpha_grid,
    default_beta_grid,
    grasp_plane_csv,
    grasp_plane_meta,
    grasp_plane_sweep,
    region_map_csv,
    region_map_meta,
    region_sweep,
    DEFAULT_LA_FAMILY,
)
from .stats import TrialRecord, batch_ci
from .wrenches import FrictionSet, contact_wrench_basis

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INFEASIBLE_START = 4


class CliValidationError(ValueError):
    pass


def parse_angle(text: str) -> float:
    """Angle in radians; accepts `deg` and `rad` suffixes."""
    t = text.strip().lower()
    try:
        if t.endswith("deg"):
            return math.radians(float(t[:-3]))
        if t.endswith("rad"):
            return float(t[:-3])
        return float(t)
    except ValueError:
        raise CliValidationError(f"cannot parse angle {text!r}") from None


def parse_mu(text: str) -> FrictionSet:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliValidationError("--mu expects three comma-separated values (S,H,G)")
    try:
        mu = [float(p) for p in parts]
    except ValueError:
        raise CliValidationError(f"cannot parse friction set {text!r}") from None
    return FrictionSet(*mu)


def parse_la_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise CliValidationError(f"cannot parse l_a list {text!r}") from None


def parse_point(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliValidationError(f"expected x,y but got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise CliValidationError(f"cannot parse point {text!r}") from None


def parse_schedule(text: str) -> tuple[float, float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return v, v
        if len(parts) == 2:
            return float(parts[0]), float(parts[1])
    except ValueError:
        pass
    raise CliValidationError(f"cannot parse l_a schedule {text!r} (expected start:end)")


def _fmt(v: float) -> float:
    return float(f"{v + 0.0:.9g}")  # + 0.0 normalises negative zero


def _resolve_object(args):
    catalog = load_catalog(args.objects)
    if args.object not in catalog:
        raise CliValidationError(
            f"unknown object {args.object!r}; catalog has: {', '.join(sorted(catalog))}"
        )
    obj, gripper = catalog[args.object]
    if getattr(args, "width", None) is not None:
        obj, gripper = with_gripper_width((obj, gripper), args.width)
    if getattr(args, "delta", None) is not None:
        delta = args.delta
        if not 0 < delta < obj.D / 2:
            raise CliValidationError(f"--delta must lie in (0, D/2) = (0, {obj.D / 2})")
    else:
        delta = hole_contact_depth(obj, hole_contact_offset(gripper, obj))
    return obj, gripper, delta


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_region(args) -> int:
    obj, _gripper, delta = _resolve_object(args)
    friction = parse_mu(args.mu)
    mode = args.mode.replace("-", "_")
    la_values = parse_la_list(args.la)
    for la in la_values:
        if not 0 < la <= 1:
            raise CliValidationError(f"l_a {la} outside (0, 1]")
    alpha_grid = default_alpha_grid(args.alpha_step)
    beta_grid = default_beta_grid(args.beta_step)

    out_dir = Path(args.out_dir)
    outputs = []
    for la in la_values:
        rmap = region_sweep(
            obj, friction, la, alpha_grid, beta_grid, mode, delta=delta, workers=args.parallel
        )
        stem = f"region_{obj.name}_{mode}_la{la:g}"
        outputs.append((out_dir / f"{stem}.csv", region_map_csv(rmap)))
        outputs.append((out_dir / f"{stem}.json", json.dumps(region_map_meta(rmap, obj), indent=2) + "\n"))
    for path, text in outputs:
        _write_text(path, text)
        print(path)
    return EXIT_OK


def cmd_beta_ub(args) -> int:
    obj, _gripper, delta = _resolve_object(args)
    friction = parse_mu(args.mu)
    la = args.la
    if not 0 < la <= 1:
        raise CliValidationError(f"l_a {la} outside (0, 1]")
    alpha = parse_angle(args.alpha)

    bound = beta_upper_bound(obj, friction, la, alpha, delta=delta)
    if bound.status == "infeasible_at_start":
        doc = {"error": "infeasible_at_start"}
        text = json.dumps(doc, indent=2) + "\n"
        print(text, end="")
        if args.out:
            _write_text(Path(args.out), text)
        return EXIT_INFEASIBLE_START
    doc = {"beta_ub_rad": _fmt(bound.value) if bound.finite else "none"}
    if bound.finite and len(bound.transitions) > 1:
        doc["transitions_rad"] = [_fmt(t) for t in bound.transitions]
    text = json.dumps(doc, indent=2) + "\n"
    print(text, end="")
    if args.out:
        _write_text(Path(args.out), text)
    return EXIT_OK


def cmd_traj(args) -> int:
    obj, _gripper, delta = _resolve_object(args)
    la = args.la
    alpha = parse_angle(args.alpha)
    beta0 = parse_angle(args.beta0)
    cfg = config_from_delta(obj, la, alpha, beta0, delta)
    theta = parse_angle(args.theta)

    bound_value = None
    if args.clamp_beta_ub:
        if args.mu is None:
            raise CliValidationError("--clamp-beta-ub requires --mu")
        bound = beta_upper_bound(obj, parse_mu(args.mu), la, alpha, delta=delta)
        if bound.status == "infeasible_at_start":
            print(json.dumps({"error": "infeasible_at_start"}, indent=2))
            return EXIT_INFEASIBLE_START
        if bound.finite:
            bound_value = bound.value

    if args.center is None:
        center = GripperPose(x=obj.a, y=obj.b, phi=beta0)
    else:
        cx, cy = parse_point(args.center)
        center = GripperPose(x=cx, y=cy, phi=beta0)
    plan = plan_pivot(obj, cfg, center, theta, args.waypoints, beta_ub=bound_value)
    doc = plan_to_dict(plan)

    outputs = [(Path(args.out), json.dumps(doc, indent=2) + "\n")]
    if args.align_out:
        poses = align_phase(obj, cfg, args.waypoints)
        outputs.append(
            (Path(args.align_out), json.dumps({"waypoints": poses_to_dicts(poses)}, indent=2) + "\n")
        )
    for path, text in outputs:
        _write_text(path, text)
        print(path)
    return EXIT_OK


def cmd_simulate(args) -> int:
    obj, _gripper, delta = _resolve_object(args)
    friction = parse_mu(args.mu)
    alpha = parse_angle(args.alpha)
    la_start, la_end = parse_schedule(args.la_schedule)
    for v in (la_start, la_end):
        if not 0 < v <= 1:
            raise CliValidationError(f"l_a {v} outside (0, 1]")
    schedule = linear_la_schedule(la_start, la_end)
    beta_grid = default_beta_grid(args.beta_step)

    traj = simulate_grasp_trajectory(obj, friction, alpha, schedule, beta_grid, delta=delta)
    if not 0 < args.la_step <= 1:
        raise CliValidationError("--la-step must lie in (0, 1]")
    n_la = math.floor(1.0 / args.la_step + 1e-9)
    la_grid = tuple(min(args.la_step * i, 1.0) for i in range(1, n_la + 1))
    gmap = grasp_plane_sweep(
        obj, friction, alpha, la_grid, beta_grid, delta=delta, workers=args.parallel
    )

    out_dir = Path(args.out_dir)
    outputs = [
        (out_dir / f"trajectory_{obj.name}.csv", trajectory_csv(traj)),
        (out_dir / f"grasp_plane_{obj.name}.csv", grasp_plane_csv(gmap)),
        (out_dir / f"grasp_plane_{obj.name}.json", json.dumps(grasp_plane_meta(gmap, obj), indent=2) + "\n"),
    ]
    for path, text in outputs:
        _write_text(path, text)
        print(path)
    return EXIT_OK


def cmd_wrench(args) -> int:
    obj, _gripper, delta = _resolve_object(args)
    friction = parse_mu(args.mu)
    cfg = config_from_delta(obj, args.la, parse_angle(args.alpha), parse_angle(args.beta), delta)
    basis = contact_wrench_basis(obj, cfg, friction)
    lines = ["label,m,fx,fy"]
    for label, w in zip(basis.labels, basis):
        # + 0.0 normalises negative zero
        lines.append(f"{label},{w.m + 0.0:.9g},{w.fx + 0.0:.9g},{w.fy + 0.0:.9g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_text(Path(args.out), text)
        print(args.out)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_ci(args) -> int:
    records = []
    if args.infile:
        for line in Path(args.infile).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, k, n = line.split(",")
            records.append(TrialRecord(int(k), int(n), z=args.z, name=name.strip()))
    names = args.names.split(",") if args.names else []
    for i, pair in enumerate(args.pairs):
        try:
            k, n = pair.split("/")
            rec = TrialRecord(int(k), int(n), z=args.z, name=names[i] if i < len(names) else pair)
        except (ValueError, IndexError):
            raise CliValidationError(f"cannot parse trial pair {pair!r} (expected k/n)") from None
        records.append(rec)
    if not records:
        raise CliValidationError("no trial records given")

    results = batch_ci(records)
    header = f"{'name':<16} {'trials':>8} {'rate':>8} {'ci_lower':>9} {'ci_upper':>9}"
    print(header)
    print("-" * len(header))
    csv_lines = ["name,successes,trials,rate_pct,ci_lower_pct,ci_upper_pct"]
    for rec, (name, ci) in zip(records, results):
        rate = 100.0 * rec.rate
        lo, hi = 100.0 * ci.lower, 100.0 * ci.upper
        print(f"{name:<16} {rec.successes:>3}/{rec.trials:<4} {rate:>7.2f}% {lo:>8.2f}% {hi:>8.2f}%")
        csv_lines.append(
            f"{name},{rec.successes},{rec.trials},{rate:.9g},{lo:.9g},{hi:.9g}"
        )
    if args.csv:
        _write_text(Path(args.csv), "\n".join(csv_lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_object_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--object", required=True, help="object name from the catalog")
    p.add_argument("--objects", default=None, help="path to a catalog JSON (default: bundled)")
    p.add_argument("--width", type=float, default=None, help="override gripper finger width (mm)")
    p.add_argument("--delta", type=float, default=None, help="override hole contact depth (mm)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivotgrasp",
        description="Stability analysis and trajectory generation for pivot-based hole grasps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", help="sweep stable-region maps over the (alpha, beta) plane")
    _add_object_args(p)
    p.add_argument("--mu", required=True, help="friction coefficients mu_S,mu_H,mu_G")
    p.add_argument("--la", default=",".join(str(v) for v in DEFAULT_LA_FAMILY),
                   help="comma-separated l_a values")
    p.add_argument("--mode", choices=("force-balance", "form-closure"), default="force-balance")
    p.add_argument("--alpha-step", type=float, default=0.5, help="alpha grid step (degrees)")
    p.add_argument("--beta-step", type=float, default=0.5, help="beta grid step (degrees)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--parallel", type=int, default=1, help="sweep worker count")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("beta-ub", help="locate the tilt bound where force balance is lost")
    _add_object_args(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--la", type=float, required=True)
    p.add_argument("--alpha", required=True, help="gripper-object angle (e.g. 18deg)")
    p.add_argument("--out", default=None, help="also write the JSON result here")
    p.set_defaults(func=cmd_beta_ub)

    p = sub.add_parser("traj", help="generate the pivot arc (and optionally align) waypoints")
    _add_object_args(p)
    p.add_argument("--la", type=float, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta0", default="0", help="initial object tilt (default 0)")
    p.add_argument("--theta", default="90deg", help="pivot rotation (default 90deg)")
    p.add_argument("--waypoints", type=int, default=64)
    p.add_argument("--center", default=None, help="object centre x,y (mm); default rests on ground")
    p.add_argument("--mu", default=None)
    p.add_argument("--clamp-beta-ub", action="store_true",
                   help="clamp theta to the force-balance tilt bound (requires --mu)")
    p.add_argument("--out", required=True)
    p.add_argument("--align-out", default=None, help="also write align-phase waypoints here")
    p.set_defaults(func=cmd_traj)

    p = sub.add_parser("simulate", help="simulate a grasp trajectory with a sliding schedule")
    _add_object_args(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--la-schedule", required=True, help="l_a start:end (linear in beta)")
    p.add_argument("--beta-step", type=float, default=0.5)
    p.add_argument("--la-step", type=float, default=0.02, help="l_a grid step for the overlay map")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("wrench", help="dump the six basis contact wrenches as CSV")
    _add_object_args(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--la", type=float, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_wrench)

    p = sub.add_parser("ci", help="Wilson score confidence intervals for success/trial pairs")
    p.add_argument("pairs", nargs="*", help="trial pairs like 9/10")
    p.add_argument("--z", type=float, default=1.96, help="normal critical value (default 95%%)")
    p.add_argument("--names", default=None, help="comma-separated names for the pairs")
    p.add_argument("--infile", default=None, help="CSV of name,successes,trials rows")
    p.add_argument("--csv", default=None, help="write the table as CSV here")
    p.set_defaults(func=cmd_ci)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliValidationError, ConfigError, GeometryError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
