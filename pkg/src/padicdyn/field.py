"""Exact arithmetic for the field Q with a p-adic absolute value.

Scalars are fractions.Fraction values throughout; nothing is ever rounded.
The absolute value |x| = p^(-v_p(x)) is represented by PValue, which stores
the exponent as an exact rational so that fractional radii such as p^(1/2)
coming from Newton polygons stay exact.
"""

from fractions import Fraction
from functools import lru_cache
from math import inf

from .errors import (
    EvenPrimeUnsupported,
    NonSquareResidue,
    OddValuation,
    ZeroPolynomial,
)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p):
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")
    return p


def _int_valuation(n, p):
    # multiplicity of p in a nonzero integer
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p):
    """p-adic valuation of a rational number; valuation(0, p) is +infinity."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return inf
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


class PValue:
    """Value of a p-adic absolute value: either 0 or p^exp with exp rational.

    Instances are immutable and totally ordered, with the zero value below
    every power of p.  Multiplication adds exponents and zero annihilates,
    except that zero ** 0 is p^0 (empty products are 1, which keeps Gauss
    norm formulas uniform at points of radius zero).
    """

    __slots__ = ("_zero", "_exp")

    def __init__(self, exp):
        self._zero = False
        self._exp = Fraction(exp)

    @classmethod
    def zero(cls):
        v = object.__new__(cls)
        v._zero = True
        v._exp = None
        return v

    @classmethod
    def one(cls):
        return cls(0)

    @property
    def is_zero(self):
        return self._zero

    @property
    def exp(self):
        if self._zero:
            raise ValueError("the zero value has no exponent")
        return self._exp

    def __eq__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        if self._zero or other._zero:
            return self._zero and other._zero
        return self._exp == other._exp

    def __hash__(self):
        return hash(("PValue", self._zero, self._exp))

    def __lt__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        if self._zero:
            return not other._zero
        if other._zero:
            return False
        return self._exp < other._exp

    def __le__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        return self == other or self < other

    def __gt__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        return other < self

    def __ge__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        return other <= self

    def __mul__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        if self._zero or other._zero:
            return PValue.zero()
        return PValue(self._exp + other._exp)

    def __truediv__(self, other):
        if not isinstance(other, PValue):
            return NotImplemented
        if other._zero:
            raise ZeroDivisionError("division by the zero value")
        if self._zero:
            return PValue.zero()
        return PValue(self._exp - other._exp)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if self._zero:
            if n == 0:
                return PValue.one()  # empty product convention
            if n < 0:
                raise ZeroDivisionError("negative power of the zero value")
            return PValue.zero()
        return PValue(self._exp * n)

    def __repr__(self):
        return f"PValue({format_pvalue(self)!r})"

    def to_float(self, p):
        """Approximate real value p**exp; for plots and rate estimates only."""
        require_prime(p)
        if self._zero:
            return 0.0
        return float(p) ** float(self._exp)


def norm(x, p):
    """|x|_p as a PValue."""
    v = valuation(x, p)
    if v is inf:
        return PValue.zero()
    return PValue(-v)


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {s!r}") from None


def format_pvalue(v):
    if v.is_zero:
        return "0"
    return f"p^{format_rational(v.exp)}"


def parse_pvalue(s):
    if not isinstance(s, str):
        raise ValueError(f"expected a p-power string, got {s!r}")
    t = s.strip()
    if t == "0":
        return PValue.zero()
    if not t.startswith("p^"):
        raise ValueError(f"malformed p-power string {s!r}")
    return PValue(parse_rational(t[2:]))


def _mod_inverse(a, m):
    return pow(a, -1, m)


def _residue(x, modulus):
    """x mod modulus for a rational x whose denominator is a unit mod modulus."""
    x = Fraction(x)
    den = x.denominator % modulus
    return x.numerator * _mod_inverse(den, modulus) % modulus


def _tonelli_shanks(a, p):
    # square root of a quadratic residue a mod an odd prime p
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _exact_sqrt(x):
    """Exact rational square root of x, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn = int(n ** 0.5)
    while rn * rn > n:
        rn -= 1
    while (rn + 1) * (rn + 1) <= n:
        rn += 1
    rd = int(d ** 0.5)
    while rd * rd > d:
        rd -= 1
    while (rd + 1) * (rd + 1) <= d:
        rd += 1
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def hensel_sqrt(a, p, m):
    """Square root of a in Q_p, truncated to precision m.

    Returns an exact rational s with v_p(s*s - a) >= m + v_p(a).  When a is
    a square in Q the exact positive root is returned.  Otherwise the unit
    part of s is the canonical lift whose leading residue digit lies in
    1..(p-1)/2, so the choice between the two roots is deterministic.

    Raises EvenPrimeUnsupported for p = 2, OddValuation when v_p(a) is odd,
    and NonSquareResidue when the unit part is not a square mod p.
    """
    require_prime(p)
    if p == 2:
        raise EvenPrimeUnsupported("p = 2 needs a different lifting scheme")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"precision m must be a positive integer, got {m!r}")
    a = Fraction(a)
    if a == 0:
        return Fraction(0)
    v = valuation(a, p)
    if v % 2 != 0:
        raise OddValuation(f"v_p(a) = {v} is odd, no square root in Q_p")
    exact = _exact_sqrt(a)
    if exact is not None:
        return exact
    u = a / Fraction(p) ** v  # unit part, v_p(u) = 0
    r0 = _residue(u, p)
    if pow(r0, (p - 1) // 2, p) != 1:
        raise NonSquareResidue(f"{r0} is not a square mod {p}")
    s = _tonelli_shanks(r0, p)
    # quadratic lifting: double the precision until p^m
    prec = 1
    while prec < m:
        prec = min(2 * prec, m)
        mod = p ** prec
        target = _residue(u, mod)
        s = (s + target * _mod_inverse(s, mod)) * _mod_inverse(2, mod) % mod
    mod = p ** m
    if s % p > (p - 1) // 2:
        s = mod - s
    return Fraction(s) * Fraction(p) ** (v // 2)


def _lower_hull(points):
    # monotone chain, lower hull only; points already sorted by x
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep the middle point only if it lies strictly below the chord
            if (x2 - x1) * (pt[1] - y1) > (pt[0] - x1) * (y2 - y1):
                break
            hull.pop()
        hull.append(pt)
    return hull


def newton_root_radii(coeffs, p):
    """Multiset of absolute values of the roots of a polynomial over Q_p.

    coeffs lists the coefficients c_0, ..., c_d from low to high degree.
    The radii are read off the lower convex hull of the points (i, v_p(c_i)):
    a hull segment of slope s and horizontal width w contributes w roots of
    absolute value p^s, and a root at 0 of multiplicity k (k low-order zero
    coefficients) contributes k zero values.  Returns a sorted list of
    PValue of length equal to the degree.
    """
    require_prime(p)
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ZeroPolynomial("the zero polynomial has no root multiset")
    if len(cs) == 1:
        return []
    k = 0
    while cs[k] == 0:
        k += 1
    radii = [PValue.zero()] * k
    pts = [(i, Fraction(valuation(cs[i], p))) for i in range(k, len(cs)) if cs[i] != 0]
    hull = _lower_hull(pts)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        radii.extend([PValue(slope)] * (x2 - x1))
    return sorted(radii)
