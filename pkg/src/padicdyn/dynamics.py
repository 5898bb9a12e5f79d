"""Rational self-maps of the projective line over Q with p-adic structure.

A map is a pair of homogeneous forms [F : G] of the same degree in (Z, W),
stored through the coefficient lists of F(z, 1) and G(z, 1) padded to the
common degree.  normalize removes common factors and scales to coprime
integer coefficients, good reduction is detected by the resultant being a
p-adic unit, and the action on Berkovich disk points is computed exactly
(pole-free disks only; a disk containing a pole of the map is an error,
not a subdivision job).
"""

from fractions import Fraction
from math import gcd as igcd

from .berkovich import DiskPoint, gauss_norm, gauss_point
from .errors import (
    DegenerateMap,
    DiskNotPreserved,
    EvenPrimeUnsupported,
    NonSquareResidue,
    OddValuation,
    PoleInDisk,
)
from .exactlin import bareiss_det
from .field import (
    PValue,
    hensel_sqrt,
    newton_root_radii,
    norm,
    require_prime,
    valuation,
)
from . import upoly

_ONE = PValue.one()
_ZERO = PValue.zero()


class RationalMapP1:
    """Normalized pair [F : G] of degree-d forms over Q, with a prime.

    fs and gs are the coefficients of F(z, 1) and G(z, 1) from low to high
    degree, padded to length d + 1; the pair is coprime as forms, the
    coefficients are coprime integers, and the highest nonzero coefficient
    of F is positive.  Build instances through normalize.
    """

    __slots__ = ("fs", "gs", "degree", "p")

    def __init__(self, fs, gs, degree, p):
        object.__setattr__(self, "fs", tuple(fs))
        object.__setattr__(self, "gs", tuple(gs))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMapP1 is immutable")

    def __repr__(self):
        return f"RationalMapP1(fs={self.fs}, gs={self.gs}, degree={self.degree}, p={self.p})"

    def __eq__(self, other):
        if not isinstance(other, RationalMapP1):
            return NotImplemented
        return (
            self.fs == other.fs
            and self.gs == other.gs
            and self.degree == other.degree
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.fs, self.gs, self.degree, self.p))


def _low_zeros(cs):
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    return k


def normalize(fs, gs, p):
    """Build a RationalMapP1 from raw rational coefficient lists.

    fs, gs describe forms of the common formal degree len - 1; the common
    homogeneous factor (powers of Z, powers of W, and the gcd of the
    univariate cores) is removed, then the remaining coefficients are
    scaled to coprime integers with positive leading F coefficient.
    Raises DegenerateMap when the common factor exhausts the degree.
    """
    require_prime(p)
    fs = [Fraction(c) for c in fs]
    gs = [Fraction(c) for c in gs]
    if len(fs) != len(gs):
        raise ValueError("component coefficient lists must share one formal degree")
    if not upoly.trim(fs) and not upoly.trim(gs):
        raise ValueError("both components vanish identically")
    d = len(fs) - 1
    if d < 1:
        raise DegenerateMap("constant forms do not define a self-map")

    def split(cs):
        # cs = Z^z_cnt * core * (implicit W padding); core has nonzero ends
        t = upoly.trim(cs)
        if not t:
            return None, d + 1, 0  # the zero form divides everything
        z_cnt = _low_zeros(t)
        core = t[z_cnt:]
        w_cnt = d - (len(t) - 1)
        return core, z_cnt, w_cnt

    core_f, zf, wf = split(fs)
    core_g, zg, wg = split(gs)
    if core_f is None or core_g is None:
        # one component is zero: the gcd is the other component entirely
        raise DegenerateMap("a zero component forces a common factor of full degree")
    z0, w0 = min(zf, zg), min(wf, wg)
    h = upoly.gcd(core_f, core_g)
    e = len(h) - 1
    d_new = d - z0 - w0 - e
    if d_new < 1:
        raise DegenerateMap("common factor exhausts the degree")

    def rebuild(core, z_cnt):
        quot, rem = upoly.divmod_(core, h)
        assert not rem
        out = [Fraction(0)] * (z_cnt - z0) + quot
        out += [Fraction(0)] * (d_new + 1 - len(out))
        return out

    nf, ng = rebuild(core_f, zf), rebuild(core_g, zg)
    den = 1
    for c in nf + ng:
        den = den * c.denominator // igcd(den, c.denominator)
    ints_f = [int(c * den) for c in nf]
    ints_g = [int(c * den) for c in ng]
    content = 0
    for c in ints_f + ints_g:
        content = igcd(content, abs(c))
    ints_f = [c // content for c in ints_f]
    ints_g = [c // content for c in ints_g]
    lead = next(c for c in reversed(ints_f) if c != 0)
    if lead < 0:
        ints_f = [-c for c in ints_f]
        ints_g = [-c for c in ints_g]
    return RationalMapP1(ints_f, ints_g, d_new, p)


def _hom_eval(coeffs, d_outer, a_list, b_list, d_inner):
    # coefficients of the degree d_outer form evaluated at the pair of
    # degree d_inner forms (a_list, b_list); result padded to the full degree
    total = d_outer * d_inner
    acc = [Fraction(0)] * (total + 1)
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        term = upoly.mul(upoly.pow_(a_list, i), upoly.pow_(b_list, d_outer - i))
        for j, t in enumerate(term):
            acc[j] += c * t
    return acc


def compose(f, g):
    """The composite map f after g, normalized."""
    if f.p != g.p:
        raise ValueError("maps live over different primes")
    a = [Fraction(c) for c in g.fs]
    b = [Fraction(c) for c in g.gs]
    new_f = _hom_eval(f.fs, f.degree, a, b, g.degree)
    new_g = _hom_eval(f.gs, f.degree, a, b, g.degree)
    return normalize(new_f, new_g, f.p)


def iterate(f, n):
    """The n-th iterate, by repeated composition."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out


def sylvester_resultant(fs, gs):
    """Resultant of two degree-d forms given by padded coefficient lists."""
    if len(fs) != len(gs):
        raise ValueError("forms must share one formal degree")
    d = len(fs) - 1
    # rows are shifts of the reversed coefficient vectors
    top = list(reversed(fs))
    bot = list(reversed(gs))
    rows = []
    for i in range(d):
        rows.append([Fraction(0)] * i + list(top) + [Fraction(0)] * (d - 1 - i))
    for i in range(d):
        rows.append([Fraction(0)] * i + list(bot) + [Fraction(0)] * (d - 1 - i))
    return bareiss_det(rows)


def good_reduction_test(f):
    """Whether the normalized map has good reduction on the standard model.

    True iff the resultant of the integer forms is a p-adic unit.  Only
    the standard model is inspected; no conjugation search happens here.
    """
    res = sylvester_resultant(f.fs, f.gs)
    assert res != 0  # coprime forms have a nonzero resultant
    return valuation(res, f.p) == 0


def reduced_degree(f):
    """Degree of the mod-p reduction of a normalized map.

    Drops coefficients divisible by p and renormalizes the residual pair
    over the residue field; with good reduction this equals f.degree.
    """
    p = f.p
    rf = [c % p for c in f.fs]
    rg = [c % p for c in f.gs]
    # degree after removing the common factor over F_p, computed through a
    # univariate gcd with integer arithmetic mod p
    def core(cs):
        t = list(cs)
        while t and t[-1] == 0:
            t.pop()
        return t

    a, b = core(rf), core(rg)
    d = f.degree
    if not a or not b:
        return 0  # one component dies mod p: the other is the common factor

    def split(cs):
        if not cs:
            return None, d + 1, 0
        z = _low_zeros(cs)
        return cs[z:], z, d - (len(cs) - 1)

    def gcd_mod_p(u, v):
        u, v = list(u), list(v)
        while v:
            while u and u[-1] == 0:
                u.pop()
            while v and v[-1] == 0:
                v.pop()
            if not v:
                break
            if len(u) < len(v):
                u, v = v, u
                continue
            inv = pow(v[-1], -1, p)
            shiftn = len(u) - len(v)
            c = u[-1] * inv % p
            for i, cv in enumerate(v):
                u[i + shiftn] = (u[i + shiftn] - c * cv) % p
            u.pop()
        while u and u[-1] == 0:
            u.pop()
        return u

    cf, zf, wf = split(a)
    cg, zg, wg = split(b)
    h = gcd_mod_p(cf, cg)
    return d - min(zf, zg) - min(wf, wg) - (len(h) - 1)


def _univariate_pair(f, chart):
    # numerator and denominator in the coordinate of the chart:
    # chart Z reads F(z, 1) / G(z, 1), chart W reads F(1, w) / G(1, w)
    if chart == "Z":
        return list(f.fs), list(f.gs)
    return list(reversed(f.fs)), list(reversed(f.gs))


def _place_value(v, p):
    # type I image placement with chart overflow handled by inversion
    v = Fraction(v)
    if norm(v, p) <= _ONE:
        return DiskPoint("Z", v, _ZERO, p)
    return DiskPoint("W", 1 / v, _ZERO, p)


def _place_disk(b, s, p):
    """Chart placement of the z-coordinate disk D(b, s), s a PValue."""
    nb = norm(b, p)
    if s <= _ONE and nb <= _ONE:
        return DiskPoint("Z", b, s, p)
    if nb > s:
        # all points share the absolute value |b| > 1; invert exactly
        return DiskPoint("W", 1 / b, s / (nb * nb), p)
    # the disk swallows 0 and has radius > 1: it equals D(0, s), which in
    # the w = 1/z coordinate is the disk point of radius 1/s around 0
    return DiskPoint("W", 0, s ** -1, p)


def rational_eval(f, x):
    """Image of a disk point under a normalized rational map.

    Type I points map by exact evaluation with chart reassignment (the
    image of a pole is the point at infinity, stored as chart W center 0).
    Positive-radius points require a pole-free disk: if the denominator
    has a root in the disk the call raises PoleInDisk, otherwise |G| is
    constant on the disk and the image is the disk around f(center) of
    radius |F - f(center) G|_x / |G|_x, placed in whichever chart fits.
    """
    if f.p != x.p:
        raise ValueError("map and point live over different primes")
    p = f.p
    num, den = _univariate_pair(f, x.chart)
    a = x.center
    if x.is_classical:
        nv, dv = upoly.evaluate(num, a), upoly.evaluate(den, a)
        if dv == 0:
            return DiskPoint("W", 0, _ZERO, p)
        return _place_value(nv / dv, p)
    den_t = upoly.trim(den)
    if len(den_t) > 1:
        shifted = upoly.shift(den_t, a)
        for r in newton_root_radii(shifted, p):
            if r <= x.radius:
                raise PoleInDisk(
                    f"denominator vanishes on the disk of radius {x.radius!r}"
                )
    b = upoly.evaluate(num, a) / upoly.evaluate(den, a)
    centered = upoly.sub(num, upoly.scale(den, b))
    s = gauss_norm(centered, x) / gauss_norm(den, x)
    return _place_disk(b, s, p)


def image_disk(coeffs, x):
    """Image of a disk point under a polynomial self-map of the unit disk.

    coeffs lists the polynomial's coefficients, low degree first; they must
    keep the unit disk invariant (sup norm at the Gauss point <= 1, checked).
    The image of D(a, r) is D(f(a), s) with s = max over i >= 1 of
    |c_i| r^i for the Taylor coefficients c_i of f at a.
    """
    p = x.p
    if gauss_norm(coeffs, gauss_point(p)) > _ONE:
        raise DiskNotPreserved("polynomial does not map the unit disk to itself")
    if x.chart != "Z":
        raise ValueError("image_disk acts on chart Z points")
    shifted = upoly.shift(upoly.trim(coeffs), x.center)
    s = _ZERO
    for i in range(1, len(shifted)):
        term = norm(shifted[i], p) * x.radius ** i
        if term > s:
            s = term
    return DiskPoint("Z", shifted[0] if shifted else Fraction(0), s, p)


class PreimageNode:
    """Node of a quadratic backward-orbit tree for z -> z^2 - c.

    value approximates a preimage; children lists the next level (minus
    branch first), multiplicity doubles at a ramified (zero) branch, and
    pruned carries the reason when Hensel lifting refused the branch.
    """

    __slots__ = ("value", "multiplicity", "children", "pruned")

    def __init__(self, value, multiplicity):
        self.value = value
        self.multiplicity = multiplicity
        self.children = []
        self.pruned = None

    def leaves(self):
        if self.pruned is not None:
            return []
        if not self.children:
            return [self]
        out = []
        for ch in self.children:
            out.extend(ch.leaves())
        return out


def preimage_tree(c, target, depth, precision, p):
    """Backward orbits of f(z) = z^2 - c from target, depth levels deep.

    Each branch solves z^2 = t + c through hensel_sqrt at the given
    precision, so a leaf value s satisfies v_p(s^2 - (t + c)) >= precision
    + v_p(t + c) against its own parent t; pushing a leaf forward depth
    times therefore matches target up to a defect that loses at most
    v_p(2 z) per level.  Branches where the residue is a non-square (or
    the valuation is odd) are kept in the tree with a pruned flag instead
    of failing the whole enumeration.
    """
    require_prime(p)
    if p == 2:
        raise EvenPrimeUnsupported("quadratic branches need an odd prime")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    c = Fraction(c)
    root = PreimageNode(Fraction(target), 1)
    frontier = [root]
    for _ in range(depth):
        nxt = []
        for node in frontier:
            t = node.value + c
            if t == 0:
                child = PreimageNode(Fraction(0), 2 * node.multiplicity)
                node.children.append(child)
                nxt.append(child)
                continue
            try:
                s = hensel_sqrt(t, p, precision)
            except (NonSquareResidue, OddValuation) as exc:  # pruned, not fatal
                node.pruned = f"{type(exc).__name__}: {exc}"
                continue
            minus = PreimageNode(-s, node.multiplicity)
            plus = PreimageNode(s, node.multiplicity)
            node.children = [minus, plus]
            nxt.extend([minus, plus])
        frontier = nxt
    return root
