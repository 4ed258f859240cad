"""Birational automorphisms (x, t) -> (x + y, f(x) * t) of E x A^1.

These maps form a group under composition:

    compose(B, A) = A-then-B = (y_A + y_B, T_{y_A}^* f_B * f_A),
    inverse(A)    = (-y_A, T_{-y_A}^* (1 / f_A)),

and each one is only birational: applying it at a sample point inside the
support of its function is a normal Undefined outcome, not a failure.

A theta element (x, f) embeds as the automorphism (x, f); products transport
with the left factor acting first, so embed(g * h) composes embed(g) first:

    embed(theta_mul(g, h)) == compose(embed(h), embed(g)).

Equality of automorphisms is semantic (same translation, same divisor, and
the ratio of the two functions is the constant 1) because the factored
function representation has no canonical form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import CurveMismatch, EvalAtSupport, Undefined
from .ellcurve import Curve, CurvePoint, TrackedFunction, affine_points, ratio_constant
from .scalars import FpElement
from .theta import ThetaElement


@dataclass(frozen=True)
class SamplePoint:
    """A point (x, t) of E x A^1 used to evaluate automorphisms pointwise."""

    x: CurvePoint
    t: FpElement


@dataclass(frozen=True)
class BirAuto:
    """The automorphism (x, t) -> (x + y, f(x) * t)."""

    y: CurvePoint
    f: TrackedFunction

    def __post_init__(self):
        if self.y.curve != self.f.curve:
            raise CurveMismatch("translation and function live on different curves")

    @property
    def curve(self) -> Curve:
        return self.y.curve

    def __matmul__(self, other: "BirAuto") -> "BirAuto":
        """self after other."""
        return compose(self, other)

    def inverse(self) -> "BirAuto":
        return inverse(self)

    def __call__(self, s: SamplePoint) -> SamplePoint:
        return apply(self, s)

    def __repr__(self):
        return f"A({self.y!r}, {self.f!r})"


def identity(curve: Curve) -> BirAuto:
    return BirAuto(curve.infinity(), TrackedFunction.one(curve))


def compose(second: BirAuto, first: BirAuto) -> BirAuto:
    """The composite applying `first` first."""
    if second.curve != first.curve:
        raise CurveMismatch("cannot compose over different curves")
    return BirAuto(first.y + second.y, second.f.translate(first.y) * first.f)


def inverse(a: BirAuto) -> BirAuto:
    return BirAuto(-a.y, a.f.inverse().translate(-a.y))


def apply(a: BirAuto, s: SamplePoint) -> SamplePoint:
    """Evaluate at a sample; Undefined marks the birational locus."""
    if s.x.curve != a.curve:
        raise CurveMismatch(f"{s.x!r} is not on {a.curve!r}")
    try:
        factor = a.f(s.x)
    except EvalAtSupport as exc:
        raise Undefined(f"{a!r} is undefined at {s.x!r}") from exc
    return SamplePoint(s.x + a.y, factor * s.t)


def bir_equal(a: BirAuto, b: BirAuto) -> bool:
    """Same translation, same divisor, and constant function ratio 1."""
    if a.curve != b.curve or a.y != b.y:
        return False
    if a.f.divisor() != b.f.divisor():
        return False
    return ratio_constant(a.f, b.f) == a.curve.fe(1)


def theta_embed(g: ThetaElement) -> BirAuto:
    """A theta pair (x, f) acting on E x A^1 as (x, t) -> (x + x_g, f(x) t)."""
    return BirAuto(g.x, g.f)


def sample_points(curve: Curve, seed: int = 0, count: int = 100) -> Iterator[SamplePoint]:
    """Deterministic stream of samples with nonzero fiber coordinate."""
    rng = random.Random(f"{seed}:{curve.p}:samples")
    pool = affine_points(curve)
    for _ in range(count):
        x = rng.choice(pool)
        t = curve.fe(rng.randrange(1, curve.p))
        yield SamplePoint(x, t)
