"""Curve arithmetic, divisors, tracked functions, Miller ladders, pairing."""

import itertools
import random

import pytest

from jordanlab.ellcurve import (
    Curve,
    Divisor,
    TrackedFunction,
    affine_points,
    curve_search,
    enumerate_points,
    line_function,
    miller_function,
    parse_curve,
    parse_point,
    ratio_constant,
    torsion_subgroup,
    weil_pairing,
)
from jordanlab.errors import (
    BudgetExceeded,
    DegenerateAfterRetries,
    EvalAtSupport,
    NotTorsion,
    OffCurve,
)
from jordanlab.scalars import RootOfUnity

# e2-only curve with 8 points; the workhorse for level-2 checks
C730 = Curve.make(7, 3, 0)
# 18-point curve with full 3-torsion
C1370 = Curve.make(13, 7, 0)


def test_curve_validation():
    with pytest.raises(ValueError):
        Curve.make(4, 1, 1)  # p not prime
    with pytest.raises(ValueError):
        Curve.make(3, 1, 1)  # p < 5
    with pytest.raises(ValueError):
        Curve.make(5, 0, 0)  # singular
    with pytest.raises(OffCurve):
        C730.point(1, 1)


def test_point_identities():
    points = enumerate_points(C730)
    o = C730.infinity()
    for p in points:
        assert p + o == p
        assert p + (-p) == o
        assert 0 * p == o
    t = C730.point(0, 0)
    assert (2 * t).is_infinity  # y = 0 forces self-negation


@pytest.mark.parametrize("curve", [C730, C1370])
def test_group_axioms_exhaustive(curve):
    points = enumerate_points(curve)
    assert len(points) <= 40
    for a, b in itertools.product(points, repeat=2):
        assert a + b == b + a
    for a, b, c in itertools.product(points, repeat=3):
        assert (a + b) + c == a + (b + c)


def test_enumerate_points_and_hasse():
    for curve in [C730, C1370, Curve.make(5, 4, 0)]:
        points = enumerate_points(curve)
        count = len(points)
        assert (count - curve.p - 1) ** 2 <= 4 * curve.p
        for p in points[:-1]:
            assert p.y ** 2 == curve.rhs(p.x)
    assert len(enumerate_points(Curve.make(5, 4, 0))) % 4 == 0  # full 2-torsion


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_points(Curve.make(2003, 1, 1))


def test_torsion_subgroup():
    assert torsion_subgroup(C730, 1) == (C730.infinity(),)
    t2 = torsion_subgroup(C730, 2)
    assert len(t2) == 4
    assert {p.sort_key() for p in t2[:-1]} == {(0, 0), (2, 0), (5, 0)}
    assert len(torsion_subgroup(C1370, 3)) == 9


def test_curve_search_examples():
    found = curve_search(2, 5)
    assert [(c.p, c.a.value, c.b.value) for c in found] == [(5, 1, 0), (5, 4, 0)]
    for c in found:
        assert len(torsion_subgroup(c, 2)) == 4
    assert curve_search(2, 3) == []  # no prime >= 5 in range
    assert curve_search(3, 50)  # nonempty
    with pytest.raises(ValueError):
        curve_search(1, 10)


def test_line_function_divisors():
    t = C730.point(0, 0)
    vertical = line_function(t, t)
    assert vertical.divisor() == Divisor.of(C730, [(t, 2), (C730.infinity(), -2)])
    p = enumerate_points(C730)[3]
    through_pair = line_function(p, -p)
    assert through_pair.divisor() == Divisor.of(
        C730, [(p, 1), (-p, 1), (C730.infinity(), -2)]
    )
    q = enumerate_points(C730)[4]
    chord = line_function(p, q)
    assert chord.divisor().is_principal()
    assert chord.divisor().degree() == 0


def test_divisor_algebra():
    o = C730.infinity()
    p = C730.point(0, 0)
    d = Divisor.of(C730, [(p, 2), (o, -2)])
    assert d.degree() == 0
    assert (d - d).is_zero
    assert d.scale(3).multiplicity(p) == 6
    assert Divisor.of(C730, [(p, 1), (p, -1)]).is_zero


def test_is_principal_examples():
    o = C730.infinity()
    p = C730.point(0, 0)
    q = enumerate_points(C730)[3]
    assert Divisor.zero(C730).is_principal()
    assert not Divisor.of(C730, [(o, 1), (q, -1)]).is_principal()
    assert Divisor.of(C730, [(p, 2), (o, -2)]).is_principal()  # 2P = O
    assert not Divisor.of(C730, [(p, 1), (o, -1)]).is_principal()


def test_miller_function_small_cases():
    t = C730.point(0, 0)
    f = miller_function(2, t)
    assert f.divisor() == Divisor.of(C730, [(t, 2), (C730.infinity(), -2)])
    assert len(f.atoms) == 1  # a single vertical line
    with pytest.raises(NotTorsion):
        miller_function(2, C730.infinity())
    with pytest.raises(NotTorsion):
        miller_function(3, t)


@pytest.mark.parametrize("curve,n", [(C730, 2), (C1370, 3), (C1370, 6), (C730, 6), (C730, 4)])
def test_miller_divisor_bookkeeping(curve, n):
    o = curve.infinity()
    for p in enumerate_points(curve):
        if p.is_infinity or not (n * p).is_infinity:
            continue
        assert Divisor.of(curve, [(p, n), (o, -n)]).is_principal()
        f = miller_function(n, p)
        assert f.divisor() == Divisor.of(curve, [(p, n), (o, -n)])
        d = f.divisor()
        assert d.degree() == 0 and d.point_sum().is_infinity


def test_function_arithmetic():
    t = C730.point(0, 0)
    f = miller_function(2, t)
    g = miller_function(2, C730.point(2, 0))
    assert (f * g).divisor() == f.divisor() + g.divisor()
    inv = f.inverse()
    assert (f * inv).divisor().is_zero
    assert (f * inv).constant_value() == C730.fe(1)
    const = TrackedFunction.constant(C730, 5)
    assert const.divisor().is_zero
    for p in affine_points(C730):
        assert const(p) == C730.fe(5)
    with pytest.raises(ValueError):
        TrackedFunction.constant(C730, 0)


def test_eval_at_support_raises():
    t = C730.point(0, 0)
    f = miller_function(2, t)
    with pytest.raises(EvalAtSupport):
        f(t)
    with pytest.raises(EvalAtSupport):
        f(C730.infinity())


def test_equal_divisors_differ_by_constant():
    t = C730.point(0, 0)
    f = miller_function(2, t)
    g = line_function(t, t)  # same divisor, unnormalized
    c = ratio_constant(f, g)
    assert not c.is_zero
    for p in affine_points(C730):
        try:
            assert f(p) == c * g(p)
        except EvalAtSupport:
            continue


def test_translate_pullback_semantics():
    t = C730.point(0, 0)
    f = miller_function(2, t)
    o = C730.infinity()
    assert f.translate(o) == f
    y = enumerate_points(C730)[3]
    assert f.translate(y).translate(-y) == f
    g = f.translate(y)
    checked = 0
    for p in enumerate_points(C730):
        try:
            expected = f(p + y)
        except EvalAtSupport:
            continue
        assert g(p) == expected
        checked += 1
    assert checked >= 4


def test_translate_pullback_divisor_rule():
    t = C730.point(0, 0)
    f = miller_function(2, t)
    y = enumerate_points(C730)[3]
    moved = f.translate(y).divisor()
    assert moved == Divisor.of(C730, [(t - y, 2), (C730.infinity() - y, -2)])


def test_weil_pairing_level2():
    t2 = [p for p in torsion_subgroup(C730, 2)]
    for p in t2:
        assert weil_pairing(p, p, 2).is_one
    nonzero = [p for p in t2 if not p.is_infinity]
    for p, q in itertools.combinations(nonzero, 2):
        assert weil_pairing(p, q, 2) == RootOfUnity(2, 1)
    # bilinearity over the full table
    for a, b, c in itertools.product(t2, repeat=3):
        assert weil_pairing(a + b, c, 2) == weil_pairing(a, c, 2) * weil_pairing(b, c, 2)


def test_weil_pairing_level3():
    t3 = torsion_subgroup(C1370, 3)
    nonzero = [p for p in t3 if not p.is_infinity]
    for p in t3:
        assert weil_pairing(p, p, 3).is_one
    for p in nonzero:
        assert any(weil_pairing(p, q, 3).order() == 3 for q in nonzero)
    for a, b, c in itertools.product(t3, repeat=3):
        assert weil_pairing(a + b, c, 3) == weil_pairing(a, c, 3) * weil_pairing(b, c, 3)


def test_weil_pairing_independent_of_offsets():
    t3 = [p for p in torsion_subgroup(C1370, 3) if not p.is_infinity]
    p, q = t3[0], t3[2]
    values = {weil_pairing(p, q, 3, seed=s) for s in range(6)}
    assert len(values) == 1


def test_weil_pairing_torsion_precondition():
    p = next(q for q in enumerate_points(C1370) if not (2 * q).is_infinity)
    with pytest.raises(NotTorsion):
        weil_pairing(p, p, 2)


def test_weil_pairing_degenerates_when_every_point_is_torsion():
    # 4-point curve: every auxiliary offset collides with a support
    tiny = Curve.make(5, 1, 0)
    t2 = [p for p in torsion_subgroup(tiny, 2) if not p.is_infinity]
    with pytest.raises(DegenerateAfterRetries):
        weil_pairing(t2[0], t2[1], 2)


def test_line_function_through_infinity_is_vertical():
    p = enumerate_points(C730)[3]
    through_o = line_function(p, C730.infinity())
    assert through_o.divisor() == Divisor.of(
        C730, [(p, 1), (-p, 1), (C730.infinity(), -2)]
    )
    with pytest.raises(OffCurve):
        line_function(C730.infinity(), C730.infinity())


def test_every_produced_function_has_principal_divisor():
    rng = random.Random(1)
    t3 = [p for p in torsion_subgroup(C1370, 3) if not p.is_infinity]
    fns = [miller_function(3, p) for p in t3]
    for _ in range(30):
        f = rng.choice(fns)
        g = rng.choice(fns)
        y = rng.choice(enumerate_points(C1370))
        combined = (f * g.inverse()).translate(y)
        d = combined.divisor()
        assert d.degree() == 0
        assert d.point_sum().is_infinity


def test_parse_literals():
    c = parse_curve("7:3:0")
    assert c == C730
    assert parse_point(c, "inf").is_infinity
    assert parse_point(c, "0,0") == c.point(0, 0)
    with pytest.raises(ValueError):
        parse_curve("7:3")
    with pytest.raises(ValueError):
        parse_point(c, "1")
    with pytest.raises(OffCurve):
        parse_point(c, "1,1")


def test_point_order_and_scalar_mul():
    orders = {p.order() for p in enumerate_points(C1370)}
    assert orders <= {1, 2, 3, 6, 9, 18}
    g = max(enumerate_points(C1370), key=lambda p: 0 if p.is_infinity else p.order())
    k = g.order()
    assert (k * g).is_infinity
    assert not any((m * g).is_infinity for m in range(1, k))
    assert (-3) * g == 3 * (-g)
