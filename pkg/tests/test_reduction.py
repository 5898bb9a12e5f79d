"""Classical and eps-reduction of disk points.

eps_reduce_equal is cross-checked against the definitional oracle: points
in one class must agree on every membership question |f(x)| < eps for
polynomials of sup norm at most one.  Witness exponents are re-derived by
direct power iteration rather than the closed-form exponent count.
"""

import random
from fractions import Fraction

import pytest

from padicdyn.berkovich import ChartMismatch, DiskPoint, gauss_norm, gauss_point
from padicdyn.field import PValue, parse_pvalue
from padicdyn.reduction import (
    EpsClass,
    SupNormExceedsOne,
    eps_class_ids,
    eps_reduce_equal,
    ideal_member,
    partition_by_eps,
    primary_witness,
    red_classical,
)

P3 = 3
ZERO = PValue.zero()
ONE = PValue.one()
EPS1 = parse_pvalue("p^-1")
EPS2 = parse_pvalue("p^-2")


def zeta(center, radius, p=P3):
    return DiskPoint("Z", Fraction(center), radius, p)


def _random_points(rng, count, p=P3):
    radii = [ZERO, ZERO, parse_pvalue("p^-3"), EPS2, EPS1, ONE]
    return [
        zeta(Fraction(rng.randrange(-40, 41), rng.choice([1, 1, 2, 5])), rng.choice(radii))
        for _ in range(count)
    ]


def test_eps_reduce_equal_examples():
    assert eps_reduce_equal(zeta(0, EPS2), zeta(9, parse_pvalue("p^-3")), EPS1)
    assert not eps_reduce_equal(zeta(0, EPS1), zeta(0, EPS2), EPS1)


def test_eps_reduce_equal_chart_mismatch():
    w = DiskPoint("W", Fraction(3), ZERO, P3)
    with pytest.raises(ChartMismatch):
        eps_reduce_equal(w, zeta(0, ZERO), EPS1)


def test_eps_reduce_equal_bad_eps():
    with pytest.raises(ValueError):
        eps_reduce_equal(zeta(0, ZERO), zeta(0, ZERO), PValue.zero())


def test_eps_equivalence_axioms():
    rng = random.Random(301)
    pts = _random_points(rng, 50)
    for eps in (ONE, EPS1, EPS2):
        for x in pts:
            assert eps_reduce_equal(x, x, eps)
        for _ in range(1000):
            x, y, z = rng.choice(pts), rng.choice(pts), rng.choice(pts)
            assert eps_reduce_equal(x, y, eps) == eps_reduce_equal(y, x, eps)
            if eps_reduce_equal(x, y, eps) and eps_reduce_equal(y, z, eps):
                assert eps_reduce_equal(x, z, eps)


def test_eps_monotone_coarsening():
    rng = random.Random(302)
    pts = _random_points(rng, 60)
    for _ in range(800):
        x, y = rng.choice(pts), rng.choice(pts)
        if eps_reduce_equal(x, y, EPS2):
            assert eps_reduce_equal(x, y, EPS1)
        if eps_reduce_equal(x, y, EPS1):
            assert eps_reduce_equal(x, y, ONE)


def _unit_ball_polys(rng, count):
    polys = []
    while len(polys) < count:
        f = [Fraction(rng.randrange(-9, 10)) for _ in range(rng.randrange(1, 4))]
        if any(f):
            polys.append(f)
    return polys


def test_membership_coherence():
    rng = random.Random(303)
    pts = _random_points(rng, 40)
    polys = _unit_ball_polys(rng, 50)
    for eps in (ONE, EPS1):
        for _ in range(120):
            x, y = rng.choice(pts), rng.choice(pts)
            if not eps_reduce_equal(x, y, eps):
                continue
            for f in polys:
                assert ideal_member(f, x, eps) == ideal_member(f, y, eps)


def test_ideal_member_examples():
    t_poly = [Fraction(0), Fraction(1)]
    assert ideal_member(t_poly, zeta(0, EPS2), EPS1)
    assert not ideal_member(t_poly, gauss_point(P3), EPS1)
    with pytest.raises(SupNormExceedsOne):
        ideal_member([Fraction(-1, 3), Fraction(1)], zeta(0, ZERO), EPS1)


def test_primary_witness_examples():
    f = [Fraction(1), Fraction(1)]
    g = [Fraction(0), Fraction(1)]
    x = zeta(3, ZERO)
    # |fg(3)| = p^-1 is not below eps = p^-2: hypothesis fails
    assert primary_witness(x, EPS2, f, g) is None
    assert primary_witness(x, EPS2, [Fraction(1)], g) is None
    # at eps = p^-1 the product norm sits exactly at eps: still not below
    assert primary_witness(x, EPS1, f, g) is None
    # at eps = p^0: |fg(3)| = p^-1 < 1 and |f(3)| = 1 >= 1, so n = 1
    assert primary_witness(x, ONE, f, g) == 1


def test_primary_witness_needs_iteration():
    # type II point: |g| = p^(-5/2), so one factor is not enough at p^-3
    x = zeta(0, parse_pvalue("p^-5/2"))
    f = [Fraction(3), Fraction(1)]
    g = [Fraction(0), Fraction(1)]
    eps = parse_pvalue("p^-3")
    assert primary_witness(x, eps, f, g) == 2


def test_primary_witness_sup_norm_guard():
    with pytest.raises(SupNormExceedsOne):
        primary_witness(zeta(0, ZERO), EPS1, [Fraction(1, 3)], [Fraction(0), Fraction(1)])


def _pvalue_pow(v, n):
    out = PValue.one()
    for _ in range(n):
        out = out * v
    return out


def test_primary_witness_minimality_oracle():
    rng = random.Random(304)
    checked = 0
    while checked < 300:
        x = zeta(
            Fraction(rng.randrange(-9, 10) * 3),
            rng.choice([ZERO, parse_pvalue("p^-5/2"), EPS2, parse_pvalue("p^-1/2")]),
        )
        f = [Fraction(rng.choice([1, 2, 4, 5]))]
        g = [Fraction(0)] * rng.randrange(1, 3) + [Fraction(1)]
        eps = rng.choice([EPS1, EPS2, parse_pvalue("p^-3")])
        n = primary_witness(x, eps, f, g)
        gx = gauss_norm(g, x)
        fgx = gauss_norm(f, x) * gx
        if fgx < eps and gauss_norm(f, x) >= eps:
            assert n is not None
            assert _pvalue_pow(gx, n) < eps
            assert n == 1 or not _pvalue_pow(gx, n - 1) < eps
            checked += 1
        else:
            assert n is None


def test_red_classical_examples():
    assert red_classical(zeta(4, EPS2)) == ("closed", 1)
    assert red_classical(gauss_point(P3)) == ("generic", None)
    assert red_classical(zeta(Fraction(1, 2), ZERO)) == ("closed", 2)


def test_red_classical_rejects_outside_unit_ball():
    with pytest.raises(ValueError):
        red_classical(zeta(Fraction(1, 3), ZERO))
    with pytest.raises(ValueError):
        red_classical(DiskPoint("W", Fraction(3), ZERO, P3))


def test_partition_examples():
    pts = [zeta(0, ZERO), zeta(9, ZERO), zeta(1, ZERO)]
    classes = partition_by_eps(pts, EPS1)
    assert [[x.center for x in c] for c in classes] == [[0, 9], [1]]
    assert len(partition_by_eps([zeta(5, ZERO)], EPS2)) == 1
    assert eps_class_ids(pts, EPS1) == [0, 0, 1]


def test_partition_rejects_descriptor_centers():
    with pytest.raises(ValueError):
        partition_by_eps([zeta(Fraction(1, 3), ZERO)], EPS1)


def test_partition_refines_as_eps_shrinks():
    rng = random.Random(305)
    pts = _random_points(rng, 200)
    coarse = eps_class_ids(pts, EPS1)
    fine = eps_class_ids(pts, EPS2)
    for i in range(len(pts)):
        for j in range(len(pts)):
            if fine[i] == fine[j]:
                assert coarse[i] == coarse[j]


def test_eps_one_matches_classical_reduction():
    rng = random.Random(306)
    pts = [x for x in _random_points(rng, 120) if x.radius < ONE]
    ids = eps_class_ids(pts, ONE)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            assert (ids[i] == ids[j]) == (red_classical(x) == red_classical(y))


def test_eps_class_wrapper():
    cls = EpsClass(EPS1, zeta(0, ZERO))
    assert cls.contains(zeta(9, ZERO))
    assert not cls.contains(zeta(1, ZERO))
    with pytest.raises(ValueError):
        EpsClass(parse_pvalue("p^1"), zeta(0, ZERO))
