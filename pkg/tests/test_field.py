"""Scalar layer: valuations, norms, Hensel lifting, Newton root radii.

Oracles: hand-checked small cases are frozen inline; Hensel outputs are
re-verified by direct squaring, and root-radius multisets by the
multiplicativity law radii(PQ) = radii(P) + radii(Q) on random products.
"""

import random
from fractions import Fraction
from math import inf

import pytest

from padicdyn.field import (
    EvenPrimeUnsupported,
    NonSquareResidue,
    OddValuation,
    PValue,
    ZeroPolynomial,
    format_pvalue,
    format_rational,
    hensel_sqrt,
    newton_root_radii,
    norm,
    parse_pvalue,
    parse_rational,
    valuation,
)


def test_valuation_small_cases():
    assert valuation(Fraction(18), 3) == 2
    assert valuation(Fraction(0), 5) == inf
    assert valuation(Fraction(5, 9), 3) == -2
    assert valuation(Fraction(1), 7) == 0


def test_valuation_additive():
    rng = random.Random(101)
    for _ in range(300):
        p = rng.choice([2, 3, 5, 7])
        a = Fraction(rng.randrange(-50, 51), rng.randrange(1, 50))
        b = Fraction(rng.randrange(-50, 51), rng.randrange(1, 50))
        if a == 0 or b == 0:
            continue
        assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)


def test_norm_small_cases():
    assert norm(Fraction(1, 9), 3) == parse_pvalue("p^2")
    assert norm(Fraction(0), 3) == PValue.zero()
    assert norm(Fraction(6), 3) == parse_pvalue("p^-1")


def test_norm_multiplicative_and_ultrametric():
    rng = random.Random(102)
    for _ in range(500):
        p = rng.choice([2, 3, 5])
        a = Fraction(rng.randrange(-60, 61), rng.randrange(1, 40))
        b = Fraction(rng.randrange(-60, 61), rng.randrange(1, 40))
        assert norm(a * b, p) == norm(a, p) * norm(b, p)
        lhs = norm(a + b, p)
        hi = max(norm(a, p), norm(b, p))
        assert lhs <= hi
        if norm(a, p) != norm(b, p):
            assert lhs == hi


def test_pvalue_order_and_arithmetic():
    zero = PValue.zero()
    one = PValue.one()
    small = parse_pvalue("p^-2")
    big = parse_pvalue("p^3/2")
    assert zero < small < one < big
    assert small * big == parse_pvalue("p^-1/2")
    assert zero * big == zero
    assert big ** 2 == parse_pvalue("p^3")
    assert zero ** 0 == one
    assert zero ** 3 == zero


def test_pvalue_string_round_trip():
    for s in ["0", "p^0", "p^2", "p^-1", "p^-5/2", "p^7/3"]:
        v = parse_pvalue(s)
        assert parse_pvalue(format_pvalue(v)) == v
    assert format_pvalue(PValue.zero()) == "0"
    assert format_pvalue(PValue.one()) == "p^0"


def test_rational_string_round_trip():
    assert parse_rational("-5/9") == Fraction(-5, 9)
    assert format_rational(Fraction(7)) == "7"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_hensel_sqrt_exact_square():
    assert hensel_sqrt(Fraction(4), 3, 3) == 2
    assert hensel_sqrt(Fraction(1, 4), 3, 5) == Fraction(1, 2)
    assert hensel_sqrt(Fraction(9, 25), 7, 4) == Fraction(3, 5)


def test_hensel_sqrt_frozen_residue():
    s = hensel_sqrt(Fraction(-2), 3, 3)
    # 22^2 + 2 = 486 = 2 * 3^5, so 22 is a root of T^2 + 2 mod 27.
    assert s % 27 == 22
    assert valuation(s * s + 2, 3) >= 3


def test_hensel_sqrt_precision_sweep():
    rng = random.Random(103)
    for m in range(1, 21):
        for p in (3, 5, 7):
            unit = rng.choice([u for u in range(1, p) if pow(u, (p - 1) // 2, p) == 1])
            a = Fraction(unit + p * rng.randrange(0, p ** 3))
            s = hensel_sqrt(a, p, m)
            assert valuation(s * s - a, p) >= m
            if s * s == a:
                # exact rational squares return the positive root instead
                assert s > 0
            else:
                assert 1 <= s.numerator % p <= (p - 1) // 2


def test_hensel_sqrt_even_valuation_shift():
    # v_3(a) = -2; the bound shifts by the valuation of a.
    a = Fraction(7, 9)
    s = hensel_sqrt(a, 3, 4)
    assert valuation(s * s - a, 3) >= 4 - 2


def test_hensel_sqrt_errors():
    with pytest.raises(OddValuation):
        hensel_sqrt(Fraction(3), 3, 2)
    with pytest.raises(EvenPrimeUnsupported):
        hensel_sqrt(Fraction(9), 2, 2)
    with pytest.raises(NonSquareResidue):
        hensel_sqrt(Fraction(2), 3, 2)
    with pytest.raises(ValueError):
        hensel_sqrt(Fraction(4), 3, 0)
    assert hensel_sqrt(Fraction(0), 3, 2) == 0


def test_newton_root_radii_frozen():
    # T^2 - 1/9 factors as (T - 1/3)(T + 1/3); both roots have norm p^1.
    assert sorted(newton_root_radii([Fraction(-1, 9), Fraction(0), Fraction(1)], 3)) == [
        parse_pvalue("p^1"),
        parse_pvalue("p^1"),
    ]
    # T(T - 3): roots 0 and 3.
    assert sorted(newton_root_radii([Fraction(0), Fraction(-3), Fraction(1)], 3)) == [
        PValue.zero(),
        parse_pvalue("p^-1"),
    ]
    # T^2 - 3: slope 1/2 segment; the squared radius equals |3|.
    radii = newton_root_radii([Fraction(-3), Fraction(0), Fraction(1)], 3)
    assert sorted(radii) == [parse_pvalue("p^-1/2")] * 2
    assert radii[0] * radii[1] == norm(Fraction(3), 3)


def test_newton_root_radii_zero_roots():
    # T^3 exactly: three roots at the origin.
    assert newton_root_radii([Fraction(0)] * 3 + [Fraction(1)], 5) == [PValue.zero()] * 3


def test_newton_root_radii_constant_and_zero():
    assert newton_root_radii([Fraction(4)], 3) == []
    with pytest.raises(ZeroPolynomial):
        newton_root_radii([Fraction(0), Fraction(0)], 3)


def _random_poly(rng, max_deg):
    deg = rng.randrange(1, max_deg + 1)
    coeffs = [
        Fraction(rng.randrange(-12, 13), rng.randrange(1, 10)) for _ in range(deg)
    ]
    coeffs.append(Fraction(rng.choice([1, 2, 3, 9]), rng.choice([1, 3])))
    return coeffs


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def test_newton_root_radii_multiplicative():
    rng = random.Random(104)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        f = _random_poly(rng, 3)
        g = _random_poly(rng, 3)
        together = sorted(newton_root_radii(_poly_mul(f, g), p))
        split = sorted(newton_root_radii(f, p) + newton_root_radii(g, p))
        assert together == split
