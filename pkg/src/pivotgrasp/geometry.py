"""Object, gripper and grasp-configuration geometry.

All lengths are millimetres, all angles radians. The planar model is a
2a x 2b rectangle (half-length a, half-height b) with a hole of diameter
d in its end face; the outer diameter is D. Three contact points define a
grasp: S (finger on the outer surface), H (finger inside the hole) and
G (the ground corner the object pivots about).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

HALF_PI = math.pi / 2


class GeometryError(ValueError):
    """Raised when a dimension or derived quantity is out of its domain."""


class ConfigError(ValueError):
    """Raised by validate_config; carries one code per violated constraint."""

    def __init__(self, errors: list[str]):
        super().__init__("invalid grasp configuration: " + ", ".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class ObjectSpec:
    """Rigid hollow object: half-length a, half-height b, outer/inner diameters.

    ``mass`` is a dimensionless surrogate; gravity is normalised so the
    external wrench magnitude equals ``mass``. Force-balance feasibility is
    invariant under positive scaling of it.
    """

    name: str
    a: float
    b: float
    D: float
    d: float
    cylinder: bool = True
    mass: float = 1.0

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0 or self.D <= 0:
            raise GeometryError(f"{self.name}: a, b, D must be positive")
        if not 0 < self.d < self.D:
            raise GeometryError(f"{self.name}: need 0 < d < D")
        if self.mass <= 0:
            raise GeometryError(f"{self.name}: mass must be positive")
        if self.cylinder and abs(self.b - self.D / 2) > 1e-9:
            raise GeometryError(f"{self.name}: cylindrical objects require b = D/2")


@dataclass(frozen=True)
class GripperSpec:
    """Parallel-jaw gripper: finger width w and maximum jaw stroke."""

    w: float
    stroke: float

    def __post_init__(self):
        if self.w <= 0 or self.stroke <= 0:
            raise GeometryError("gripper width and stroke must be positive")


@dataclass(frozen=True)
class GraspConfig:
    """One grasp configuration: the three variable parameters plus derived contact geometry.

    l_a is the nondimensional contact distance l/(2a) of S from the hole-side
    corner; alpha the gripper-object angle; beta the object-ground tilt;
    delta the distance of the in-hole contact H below the outer corner;
    hole_offset the distance of H from the hole centre.
    """

    l_a: float
    alpha: float
    beta: float
    delta: float
    hole_offset: float


def hole_contact_offset(gripper: GripperSpec, obj: ObjectSpec) -> float:
    """Distance from the hole centre to the inserted finger's contact point.

    A finger of width w entering a hole of diameter d touches the inner
    surface at (d/2) * sqrt(1 - (w/d)^2) from the centre. Requires w < d,
    otherwise the finger cannot enter the hole.
    """
    w, d = gripper.w, obj.d
    if w <= 0:
        raise GeometryError("gripper width must be positive")
    if w >= d:
        raise GeometryError(f"finger width {w} cannot enter hole of diameter {d}")
    return (d / 2) * math.sqrt(1.0 - (w / d) ** 2)


def hole_contact_depth(obj: ObjectSpec, offset: float) -> float:
    """Distance delta from the in-hole contact to the object's outer corner."""
    if not 0 < offset < obj.d / 2:
        raise GeometryError(f"hole contact offset {offset} outside (0, d/2)")
    return obj.D / 2 - offset


def config_errors(cfg: GraspConfig, obj: ObjectSpec) -> list[str]:
    """Return one code per violated range constraint (empty when valid).

    alpha = 0 and alpha = pi/2 are rejected with distinct codes: the former
    degenerates to a pinch grasp (the finger can no longer catch the hole),
    the latter is the direct hole grasp that pivoting exists to avoid.
    """
    errors = []
    if not 0 < cfg.l_a <= 1:
        errors.append("l_a_out_of_range")
    if cfg.alpha <= 0:
        errors.append("alpha_degenerate_pinch")
    elif cfg.alpha >= HALF_PI:
        errors.append("alpha_direct_hole_grasp")
    if not 0 <= cfg.beta <= HALF_PI:
        errors.append("beta_out_of_range")
    if not 0 < cfg.delta < obj.D / 2:
        errors.append("delta_out_of_range")
    elif abs(cfg.delta - (obj.D / 2 - cfg.hole_offset)) > 1e-9:
        errors.append("delta_inconsistent")
    return errors


def validate_config(cfg: GraspConfig, obj: ObjectSpec) -> GraspConfig:
    """Return cfg unchanged if every range constraint holds, else raise ConfigError."""
    errors = config_errors(cfg, obj)
    if errors:
        raise ConfigError(errors)
    return cfg


def grasp_config(
    obj: ObjectSpec,
    gripper: GripperSpec,
    l_a: float,
    alpha: float,
    beta: float,
) -> GraspConfig:
    """Build and validate a configuration, deriving the contact geometry from the gripper."""
    offset = hole_contact_offset(gripper, obj)
    delta = hole_contact_depth(obj, offset)
    return validate_config(
        GraspConfig(l_a=l_a, alpha=alpha, beta=beta, delta=delta, hole_offset=offset), obj
    )


def config_from_delta(
    obj: ObjectSpec, l_a: float, alpha: float, beta: float, delta: float
) -> GraspConfig:
    """Build and validate a configuration from a known contact depth delta."""
    return validate_config(
        GraspConfig(l_a=l_a, alpha=alpha, beta=beta, delta=delta, hole_offset=obj.D / 2 - delta),
        obj,
    )


# ---------------------------------------------------------------------------
# Object catalog (JSON)
# ---------------------------------------------------------------------------


def object_from_dict(doc: dict) -> tuple[ObjectSpec, GripperSpec]:
    """Parse one catalog document into an (object, gripper) pair.

    Schema: {"name": str, "a_mm": num, "b_mm": num|null, "D_mm": num,
    "d_mm": num, "cylinder": bool, "gripper": {"w_mm": num, "stroke_mm": num}}.
    Cylinders may omit b_mm (it is forced to D/2); prisms must supply it.
    """
    name = doc["name"]
    cylinder = bool(doc.get("cylinder", True))
    b = doc.get("b_mm")
    if b is None:
        if not cylinder:
            raise GeometryError(f"{name}: prisms must supply b_mm")
        b = doc["D_mm"] / 2
    obj = ObjectSpec(
        name=name,
        a=float(doc["a_mm"]),
        b=float(b),
        D=float(doc["D_mm"]),
        d=float(doc["d_mm"]),
        cylinder=cylinder,
        mass=float(doc.get("mass", 1.0)),
    )
    g = doc["gripper"]
    gripper = GripperSpec(w=float(g["w_mm"]), stroke=float(g["stroke_mm"]))
    return obj, gripper


def load_catalog(path: str | Path | None = None) -> dict[str, tuple[ObjectSpec, GripperSpec]]:
    """Load the object catalog, keyed by object name.

    With no path, the bundled catalog of reference objects is used.
    """
    if path is None:
        text = resources.files("pivotgrasp.data").joinpath("objects.json").read_text()
    else:
        text = Path(path).read_text()
    docs = json.loads(text)
    catalog = {}
    for doc in docs:
        obj, gripper = object_from_dict(doc)
        catalog[obj.name] = (obj, gripper)
    return catalog


def with_gripper_width(pair: tuple[ObjectSpec, GripperSpec], w: float) -> tuple[ObjectSpec, GripperSpec]:
    """Return the catalog pair with the gripper width replaced."""
    obj, gripper = pair
    return obj, replace(gripper, w=w)
