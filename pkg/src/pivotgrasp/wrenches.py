"""Planar contact wrench basis for the three-contact grasp.

Each contact contributes the two edges of its Coulomb friction cone as unit
wrenches (moment, fx, fy), with moments taken about the object's centre of
mass and forces expressed in the world frame. Contact S sits on the top
surface at distance l = 2a*l_a from the hole-side corner; H inside the hole
at depth delta below that corner; G is the ground corner the object pivots
about. The S and H cones rotate with the object tilt beta, the ground cone
does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import GraspConfig, ObjectSpec

WRENCH_LABELS = ("S1", "S2", "H1", "H2", "G1", "G2")


@dataclass(frozen=True)
class Wrench:
    """Planar wrench: moment about the reference point plus a force direction."""

    m: float
    fx: float
    fy: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.m, self.fx, self.fy)

    def scaled(self, c: float) -> "Wrench":
        return Wrench(c * self.m, c * self.fx, c * self.fy)


@dataclass(frozen=True)
class FrictionSet:
    """Coulomb friction coefficients at contacts S, H and G."""

    mu_s: float
    mu_h: float
    mu_g: float

    def __post_init__(self):
        if min(self.mu_s, self.mu_h, self.mu_g) < 0:
            raise ValueError("friction coefficients must be nonnegative")

    @property
    def gamma_s(self) -> float:
        """Friction half-angle at S: atan(mu_s)."""
        return math.atan(self.mu_s)

    @property
    def gamma_h(self) -> float:
        return math.atan(self.mu_h)

    @property
    def gamma_g(self) -> float:
        return math.atan(self.mu_g)


FRICTIONLESS = FrictionSet(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class WrenchBasis:
    """The six cone-edge wrenches in fixed label order S1, S2, H1, H2, G1, G2.

    The order is fixed so downstream LP coefficient columns are reproducible.
    """

    wrenches: tuple[Wrench, Wrench, Wrench, Wrench, Wrench, Wrench]

    labels = WRENCH_LABELS

    def columns(self) -> list[tuple[float, float, float]]:
        return [w.as_tuple() for w in self.wrenches]

    def __iter__(self):
        return iter(self.wrenches)

    def __getitem__(self, i):
        return self.wrenches[i]


def contact_wrench_basis(obj: ObjectSpec, cfg: GraspConfig, fr: FrictionSet) -> WrenchBasis:
    """Build the six basis contact wrenches for a grasp configuration.

    S pushes into the top surface, its cone edges at +-gamma_s about the
    inward normal; the moment arm is (l - a) along the object with a +-b
    offset from the friction component. H pulls from inside the hole at
    gripper angle alpha, arm (a, b - delta). G pushes up from the ground
    corner; its force edges are fixed in the world while the arm rotates
    with beta.
    """
    a, b = obj.a, obj.b
    l = 2.0 * a * cfg.l_a
    delta = cfg.delta
    alpha, beta = cfg.alpha, cfg.beta
    gs, gh, gg = fr.gamma_s, fr.gamma_h, fr.gamma_g

    s1 = Wrench(
        (l - a) * math.cos(gs) - b * math.sin(gs),
        math.sin(beta + gs),
        -math.cos(beta + gs),
    )
    s2 = Wrench(
        (l - a) * math.cos(gs) + b * math.sin(gs),
        math.sin(beta - gs),
        -math.cos(beta - gs),
    )
    h1 = Wrench(
        a * math.sin(alpha - gh) + (b - delta) * math.cos(alpha - gh),
        -math.cos(alpha - beta - gh),
        math.sin(alpha - beta - gh),
    )
    h2 = Wrench(
        a * math.sin(alpha + gh) + (b - delta) * math.cos(alpha + gh),
        -math.cos(alpha - beta + gh),
        math.sin(alpha - beta + gh),
    )
    g1 = Wrench(
        -a * math.cos(gg - beta) - b * math.sin(gg - beta),
        -math.sin(gg),
        math.cos(gg),
    )
    g2 = Wrench(
        -a * math.cos(gg + beta) + b * math.sin(gg + beta),
        math.sin(gg),
        math.cos(gg),
    )
    return WrenchBasis((s1, s2, h1, h2, g1, g2))


def gravity_wrench(obj: ObjectSpec) -> Wrench:
    """External wrench of gravity: straight down through the centre of mass.

    Acting at the moment reference point it carries no moment; the magnitude
    is the object's normalised weight.
    """
    return Wrench(0.0, 0.0, -obj.mass)
