"""Degree sequences and dynamical degrees at desk scale.

Plane maps are triples of homogeneous forms in (X, Y, Z) held as dicts
from exponent triples to integer coefficients; composition is a hand-rolled
dict convolution guarded by explicit symbolic budgets, while common-factor
removal delegates to sympy's multivariate gcd (an infrastructure choice,
cross-checked in the tests by an independent expansion route).  Monomial
maps get certified dynamical degrees: exact integer characteristic
polynomials of exterior powers, then bisection with an exact strict
root-location test until the bracket is narrower than the requested width.
Product-map volumes and the two inequality checks are closed-form exact.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import gcd as igcd

import sympy

from .errors import BudgetExceeded, DegenerateMap, SingularMatrix
from .exactlin import bareiss_det

_X, _Y, _Z = sympy.symbols("X Y Z")

DEFAULT_BUDGET_BITS = 100_000
DEFAULT_BUDGET_TERMS = 50_000

DegreeSequence = namedtuple("DegreeSequence", ["degrees", "lam_estimate", "bracket"])
MonomialDegrees = namedtuple("MonomialDegrees", ["values", "brackets"])
KeyLemmaReport = namedtuple(
    "KeyLemmaReport", ["sup_c", "argmax", "values", "bounded"]
)


def _t_check(d, budget_bits, budget_terms):
    if len(d) > budget_terms:
        raise BudgetExceeded(f"term count {len(d)} exceeds budget {budget_terms}")
    for c in d.values():
        if c.numerator.bit_length() + c.denominator.bit_length() > budget_bits:
            raise BudgetExceeded(f"coefficient size exceeds {budget_bits} bits")


def _t_mul(a, b, budget_bits, budget_terms):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    _t_check(out, budget_bits, budget_terms)
    return out


def _t_pow(a, n, budget_bits, budget_terms):
    out = {(0, 0, 0): Fraction(1)}
    base = dict(a)
    while n:
        if n & 1:
            out = _t_mul(out, base, budget_bits, budget_terms)
        n >>= 1
        if n:
            base = _t_mul(base, base, budget_bits, budget_terms)
    return out


def _t_eval(a, point):
    x, y, z = (Fraction(v) for v in point)
    total = Fraction(0)
    for (i, j, k), c in a.items():
        total += c * x ** i * y ** j * z ** k
    return total


def _t_degree(a):
    degs = {sum(e) for e in a}
    if len(degs) > 1:
        raise ValueError("component is not homogeneous")
    return degs.pop() if degs else None


def _to_sympy(a):
    return sympy.Add(*[
        sympy.Rational(c.numerator, c.denominator) * _X ** i * _Y ** j * _Z ** k
        for (i, j, k), c in a.items()
    ])


def _from_sympy(expr):
    out = {}
    for exps, c in sympy.Poly(expr, _X, _Y, _Z).terms():
        out[exps] = Fraction(int(c.p), int(c.q))
    return out


class PlaneMap:
    """Normalized rational self-map of the projective plane.

    components holds three exponent-dict forms of one degree, coprime as a
    triple, with coprime integer coefficients; the first nonzero
    coefficient of the first nonzero component (in descending exponent
    order) is positive.  Build through normalize_plane.
    """

    __slots__ = ("components", "degree")

    def __init__(self, components, degree):
        object.__setattr__(self, "components", tuple(components))
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("PlaneMap is immutable")

    def __repr__(self):
        return f"PlaneMap(degree={self.degree}, terms={[len(c) for c in self.components]})"


def normalize_plane(components):
    """Build a PlaneMap from three raw exponent dicts of equal degree.

    Removes the gcd of the triple (sympy multivariate gcd), clears
    denominators, divides out the integer content and fixes the sign.
    Raises DegenerateMap when the common factor eats the whole degree.
    """
    comps = []
    for raw in components:
        d = {}
        for e, c in raw.items():
            c = Fraction(c)
            if c:
                d[tuple(e)] = c
        comps.append(d)
    if all(not c for c in comps):
        raise ValueError("all three components vanish")
    degs = {_t_degree(c) for c in comps if c}
    if len(degs) != 1:
        raise ValueError("components must share one degree")
    nonzero = [c for c in comps if c]
    g = _to_sympy(nonzero[0])
    for c in nonzero[1:]:
        g = sympy.gcd(g, _to_sympy(c))
    if sympy.Poly(g, _X, _Y, _Z).total_degree() > 0:
        reduced = []
        for c in comps:
            if not c:
                reduced.append({})
                continue
            q, r = sympy.div(_to_sympy(c), g, _X, _Y, _Z)
            assert r == 0
            reduced.append(_from_sympy(q))
        comps = reduced
    new_deg = _t_degree(next(c for c in comps if c))
    if new_deg is None or new_deg < 1:
        raise DegenerateMap("common factor exhausts the degree")
    den = 1
    for c in comps:
        for v in c.values():
            den = den * v.denominator // igcd(den, v.denominator)
    content = 0
    int_comps = []
    for c in comps:
        ic = {e: int(v * den) for e, v in c.items()}
        int_comps.append(ic)
        for v in ic.values():
            content = igcd(content, abs(v))
    int_comps = [{e: v // content for e, v in c.items()} for c in int_comps]
    lead = None
    for c in int_comps:
        if c:
            lead = c[max(c)]
            break
    if lead < 0:
        int_comps = [{e: -v for e, v in c.items()} for c in int_comps]
    frac_comps = [{e: Fraction(v) for e, v in c.items()} for c in int_comps]
    return PlaneMap(frac_comps, new_deg)


def plane_map_from_exponents(monomials):
    """Convenience builder: three lists of (coefficient, (i, j, k)) pairs."""
    comps = []
    for rows in monomials:
        d = {}
        for c, e in rows:
            e = tuple(e)
            d[e] = d.get(e, Fraction(0)) + Fraction(c)
        comps.append(d)
    return normalize_plane(comps)


def compose_plane(f, g, budget_bits=DEFAULT_BUDGET_BITS, budget_terms=DEFAULT_BUDGET_TERMS):
    """f after g, with budget-guarded expansion and then normalization."""
    gx, gy, gz = g.components
    new_comps = []
    for comp in f.components:
        acc = {}
        for (i, j, k), c in comp.items():
            term = _t_pow(gx, i, budget_bits, budget_terms)
            term = _t_mul(term, _t_pow(gy, j, budget_bits, budget_terms), budget_bits, budget_terms)
            term = _t_mul(term, _t_pow(gz, k, budget_bits, budget_terms), budget_bits, budget_terms)
            for e, v in term.items():
                nv = acc.get(e, 0) + c * v
                if nv:
                    acc[e] = nv
                elif e in acc:
                    del acc[e]
        _t_check(acc, budget_bits, budget_terms)
        new_comps.append(acc)
    return normalize_plane(new_comps)


def evaluate_plane(f, point):
    """Exact image of a projective point, as a tuple of Fractions."""
    return tuple(_t_eval(c, point) for c in f.components)


def normalize_projective(vec):
    """Primitive integer representative with positive first nonzero entry,
    or None when every coordinate vanishes (indeterminate image)."""
    vec = [Fraction(v) for v in vec]
    if all(v == 0 for v in vec):
        return None
    den = 1
    for v in vec:
        den = den * v.denominator // igcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    content = 0
    for v in ints:
        content = igcd(content, abs(v))
    ints = [v // content for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def plane_degree_sequence(f, nmax, budget_bits=DEFAULT_BUDGET_BITS,
                          budget_terms=DEFAULT_BUDGET_TERMS):
    """Degrees of the iterates f, f^2, ..., f^nmax after factor removal.

    The first dynamical degree is estimated by deg(f^nmax)^(1/nmax); the
    reported bracket [estimate, deg f] reflects submultiplicativity.
    """
    if nmax < 1:
        raise ValueError("need nmax >= 1")
    degrees = [f.degree]
    g = f
    for _ in range(nmax - 1):
        g = compose_plane(f, g, budget_bits, budget_terms)
        degrees.append(g.degree)
    est = degrees[-1] ** (1.0 / nmax)
    return DegreeSequence(degrees, est, (est, float(f.degree)))


class MonomialMap:
    """Integer matrix of exponents of a monomial self-map of the torus."""

    __slots__ = ("matrix", "dim")

    def __init__(self, matrix):
        rows = [tuple(int(x) for x in row) for row in matrix]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        if bareiss_det(rows) == 0:
            raise SingularMatrix("exponent matrix must be invertible over Q")
        object.__setattr__(self, "matrix", tuple(rows))
        object.__setattr__(self, "dim", n)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialMap is immutable")


def exterior_power_matrix(rows, k):
    """Matrix of the k-th exterior power: k-minors indexed by k-subsets."""
    n = len(rows)
    subsets = list(combinations(range(n), k))
    out = []
    for ri in subsets:
        line = []
        for ci in subsets:
            minor = [[rows[a][b] for b in ci] for a in ri]
            line.append(bareiss_det(minor))
        out.append(line)
    return out


def charpoly(rows):
    """Monic characteristic polynomial det(tI - M), exact, low degree first.

    Interpolates the determinant at t = 0..n and solves with exact
    Lagrange arithmetic; entries may be rationals.
    """
    n = len(rows)
    nodes = list(range(n + 1))
    values = []
    for t in nodes:
        m = [[(Fraction(t) if i == j else Fraction(0)) - Fraction(rows[i][j])
              for j in range(n)] for i in range(n)]
        values.append(bareiss_det(m))
    # Lagrange: sum_i values[i] * prod_{j != i} (t - node_j)/(node_i - node_j)
    coeffs = [Fraction(0)] * (n + 1)
    for i, node in enumerate(nodes):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, other in enumerate(nodes):
            if i == j:
                continue
            basis = [Fraction(0)] + basis  # multiply by t
            for idx in range(len(basis) - 1):
                basis[idx] -= other * basis[idx + 1]
            denom *= node - other
        w = values[i] / denom
        for idx, b in enumerate(basis):
            coeffs[idx] += w * b
    assert coeffs[n] == 1
    return coeffs


def _roots_strictly_inside_unit_disk(coeffs):
    """Exact strict root-location test (Schur-Cohn recursion).

    coeffs low degree first, rational, leading nonzero.  Returns True iff
    every root has modulus < 1; a boundary root yields False.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    while len(cs) > 1:
        a0, an = cs[0], cs[-1]
        if abs(a0) >= abs(an):
            return False
        nxt = [an * cs[i] - a0 * cs[len(cs) - 1 - i] for i in range(1, len(cs))]
        cs = nxt
    return True


def max_root_modulus(coeffs, width=Fraction(1, 10 ** 9)):
    """Certified bracket (lo, hi) around the largest root modulus.

    Bisects with the exact Schur-Cohn test: stable at radius R means every
    root has modulus < R.  hi - lo < width on return.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        raise ValueError("need degree >= 1")
    if all(c == 0 for c in cs[:-1]):
        return Fraction(0), Fraction(0)

    def stable(radius):
        if radius <= 0:
            return False
        scaled = [c * radius ** i for i, c in enumerate(cs)]
        return _roots_strictly_inside_unit_disk(scaled)

    lead = abs(cs[-1])
    hi = Fraction(2) + max(abs(c) / lead for c in cs[:-1])
    lo = Fraction(0)
    assert stable(hi)
    while hi - lo >= width:
        mid = (hi + lo) / 2
        if stable(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def monomial_dynamical_degrees(mono, width=Fraction(1, 10 ** 9)):
    """Certified dynamical degrees of a monomial map.

    The k-th value is the spectral radius of the k-th exterior power of
    the exponent matrix; 0-th is 1 and the top one is |det| exactly.
    Returns floats plus exact rational brackets of the requested width.
    """
    rows = [list(r) for r in mono.matrix]
    d = mono.dim
    values = [1.0]
    brackets = [(Fraction(1), Fraction(1))]
    for k in range(1, d):
        ext = exterior_power_matrix(rows, k)
        lo, hi = max_root_modulus(charpoly(ext), width)
        values.append(float((lo + hi) / 2))
        brackets.append((lo, hi))
    det = abs(bareiss_det(rows))
    values.append(float(det))
    brackets.append((det, det))
    return MonomialDegrees(values, brackets)


def product_map_volume(d1, d2, n):
    """Self-intersection of the n-step polarization for a product of two
    degree d1 and d2 self-maps of the line: the double sum over
    0 <= i, j < n of d1^|i-j| + d2^|i-j|, in closed form."""
    if min(d1, d2, n) < 1:
        raise ValueError("need d1, d2, n >= 1")

    def tri(d):
        if d == 1:
            return n * n
        a = (d ** n - d) // (d - 1)  # sum of d^k, k = 1..n-1
        b = d * (1 - n * d ** (n - 1) + (n - 1) * d ** n) // ((d - 1) ** 2)
        return n + 2 * (n * a - b)

    return tri(d1) + tri(d2)


def key_lemma_check(d1, d2, eps, nmax):
    """Ratio of the volume to the dominant growth term, over n <= nmax.

    C(n) = volume(n) / (lambda_max + eps)^n with lambda_max = d1*d2, the
    largest of the three dynamical degrees 1, max(d1, d2), d1*d2.  Reports
    the sup, its argmax, the exact values, and whether the tail after the
    argmax is non-increasing (boundedness verdict).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    lam = d1 * d2
    values = []
    for n in range(1, nmax + 1):
        values.append(Fraction(product_map_volume(d1, d2, n)) / (lam + eps) ** n)
    sup_c = max(values)
    argmax = values.index(sup_c) + 1
    bounded = all(values[i + 1] <= values[i] for i in range(argmax - 1, len(values) - 1))
    return KeyLemmaReport(sup_c, argmax, values, bounded)


def siu_surface_check(alpha, beta):
    """Two-class comparison on a product surface: alpha is dominated
    componentwise by 2 (alpha.beta / beta^2) beta for nef alpha and big
    nef beta, with alpha.beta = a*e + b*c and beta^2 = 2*c*e."""
    a, b = (Fraction(v) for v in alpha)
    c, e = (Fraction(v) for v in beta)
    if a < 0 or b < 0 or c <= 0 or e <= 0:
        raise ValueError("need alpha >= 0 and beta > 0 componentwise")
    dot = a * e + b * c
    beta_sq = 2 * c * e
    factor = 2 * dot / beta_sq
    return a <= factor * c and b <= factor * e
