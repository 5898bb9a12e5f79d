"""Disk points, Gauss norms, and the containment order.

The headline oracle here is sampling: the Gauss norm at a positive-radius
point is the sup of |P(t)| over rational t in the disk, so a dense random
sample must attain (and never exceed) the recentering formula's value.
"""

import random
from fractions import Fraction

import pytest

from padicdyn.berkovich import (
    ChartMismatch,
    DiskPoint,
    classical_point,
    from_json,
    gauss_norm,
    gauss_point,
    point_eq,
    point_leq,
    to_json,
)
from padicdyn.field import PValue, norm, parse_pvalue

P3 = 3
ZERO = PValue.zero()
ONE = PValue.one()


def zeta(center, radius, p=P3, chart="Z"):
    return DiskPoint(chart, Fraction(center), radius, p)


def test_canonical_forms():
    # radius-one disks in either chart collapse to the Gauss point
    g = gauss_point(P3)
    assert g.chart == "Z" and g.center == 0 and g.radius == ONE
    assert point_eq(zeta(2, ONE), g)
    # a W-chart center on the unit circle flips to chart Z
    w = DiskPoint("W", Fraction(2), parse_pvalue("p^-1"), P3)
    assert w.chart == "Z" and w.center == Fraction(1, 2)
    # a small W center stays in chart W
    deep = DiskPoint("W", Fraction(3), ZERO, P3)
    assert deep.chart == "W"


def test_descriptor_centers_kept():
    # |1/3| > 1 in chart Z: legal as a disk descriptor, not canonicalized
    x = zeta(Fraction(1, 3), parse_pvalue("p^-2"))
    assert x.chart == "Z" and x.center == Fraction(1, 3)


def test_point_eq_examples():
    assert point_eq(zeta(0, parse_pvalue("p^-1")), zeta(3, parse_pvalue("p^-1")))
    assert not point_eq(zeta(0, ZERO), zeta(3, ZERO))
    assert point_eq(zeta(0, ONE), zeta(1, ONE))


def test_point_eq_equivalence_relation():
    rng = random.Random(201)
    radii = [ZERO, parse_pvalue("p^-2"), parse_pvalue("p^-1"), ONE]
    pts = [
        zeta(Fraction(rng.randrange(-12, 13), rng.choice([1, 1, 2, 4, 5])), rng.choice(radii))
        for _ in range(60)
    ]
    for x in pts:
        assert point_eq(x, x)
    for _ in range(400):
        x, y, z = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        assert point_eq(x, y) == point_eq(y, x)
        if point_eq(x, y) and point_eq(y, z):
            assert point_eq(x, z)


def test_point_leq_examples():
    assert point_leq(zeta(0, ZERO), zeta(0, ONE))
    assert not point_leq(zeta(0, ONE), zeta(0, ZERO))
    assert point_leq(zeta(1, parse_pvalue("p^-2")), zeta(4, parse_pvalue("p^-1")))


def test_point_leq_chart_mismatch():
    w = DiskPoint("W", Fraction(3), ZERO, P3)
    with pytest.raises(ChartMismatch):
        point_leq(w, zeta(0, ZERO))


def test_point_leq_partial_order():
    rng = random.Random(202)
    radii = [ZERO, parse_pvalue("p^-2"), parse_pvalue("p^-1"), ONE]
    pts = [zeta(rng.randrange(-9, 10), rng.choice(radii)) for _ in range(40)]
    for x in pts:
        assert point_leq(x, x)
    for _ in range(500):
        x, y, z = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        if point_leq(x, y) and point_leq(y, x):
            assert point_eq(x, y)
        if point_leq(x, y) and point_leq(y, z):
            assert point_leq(x, z)


def test_gauss_norm_examples():
    t_poly = [Fraction(0), Fraction(1)]
    assert gauss_norm(t_poly, zeta(0, parse_pvalue("p^-1"))) == parse_pvalue("p^-1")
    assert gauss_norm([Fraction(5)], zeta(7, parse_pvalue("p^-2"))) == ONE
    x = zeta(Fraction(1, 3), parse_pvalue("p^-2"))
    assert gauss_norm([Fraction(-1, 9), Fraction(0), Fraction(1)], x) == parse_pvalue("p^-1")


def test_gauss_norm_type_one_is_evaluation():
    rng = random.Random(203)
    for _ in range(200):
        coeffs = [Fraction(rng.randrange(-9, 10), rng.choice([1, 2, 5])) for _ in range(4)]
        a = Fraction(rng.randrange(-9, 10))
        val = sum(c * a ** i for i, c in enumerate(coeffs))
        assert gauss_norm(coeffs, zeta(a, ZERO)) == norm(val, P3)


def test_gauss_norm_sampling_oracle():
    # sup of |T^2 - 1/9| over the disk |t - 1/3| <= 1/9, sampled densely:
    # every sample stays <= p^-1 and some sample attains it.
    coeffs = [Fraction(-1, 9), Fraction(0), Fraction(1)]
    expected = parse_pvalue("p^-1")
    rng = random.Random(204)
    best = PValue.zero()
    for _ in range(1200):
        num = rng.randrange(-60, 61)
        den = rng.randrange(1, 60)
        if den % 3 == 0:
            den += 1 if (den + 1) % 3 else 2
        t = Fraction(1, 3) + Fraction(9) * Fraction(num, den)
        assert norm(t - Fraction(1, 3), P3) <= parse_pvalue("p^-2")
        val = norm(t * t - Fraction(1, 9), P3)
        assert val <= expected
        best = max(best, val)
    assert best == expected


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def test_gauss_norm_multiplicative_and_subadditive():
    rng = random.Random(205)
    radii = [ZERO, parse_pvalue("p^-3/2"), parse_pvalue("p^-1"), ONE]
    for _ in range(300):
        x = zeta(rng.randrange(-9, 10), rng.choice(radii))
        f = [Fraction(rng.randrange(-9, 10), rng.choice([1, 3])) for _ in range(3)]
        g = [Fraction(rng.randrange(-9, 10), rng.choice([1, 3])) for _ in range(3)]
        if not any(f) or not any(g):
            continue
        assert gauss_norm(_poly_mul(f, g), x) == gauss_norm(f, x) * gauss_norm(g, x)
        h = [a + b for a, b in zip(f, g)]
        assert gauss_norm(h, x) <= max(gauss_norm(f, x), gauss_norm(g, x))


def test_gauss_norm_monotone_in_containment():
    rng = random.Random(206)
    for _ in range(300):
        a = Fraction(rng.randrange(-9, 10))
        small = zeta(a + 3 * rng.randrange(-2, 3), parse_pvalue("p^-2"))
        large = zeta(a, parse_pvalue("p^-1"))
        if not point_leq(small, large):
            continue
        f = [Fraction(rng.randrange(-9, 10)) for _ in range(4)]
        if not any(f):
            continue
        assert gauss_norm(f, small) <= gauss_norm(f, large)


def test_json_round_trip():
    x = zeta(Fraction(1, 3), parse_pvalue("p^-2"))
    blob = to_json(x)
    assert blob == {"chart": "Z", "center": "1/3", "radius": "p^-2"}
    assert point_eq(from_json(blob, P3), x)
    y = DiskPoint("W", Fraction(3), ZERO, P3)
    assert point_eq(from_json(to_json(y), P3), y)
    assert to_json(classical_point(Fraction(5), P3))["radius"] == "0"


def test_radius_cap():
    with pytest.raises(ValueError):
        zeta(0, parse_pvalue("p^1"))
