"""Classical and epsilon-coarsened reduction of disk points.

red_1 sends a point of the closed unit disk to the special fiber: a closed
point labeled by the residue of the center when the radius is < 1, the
generic point for the Gauss point.  The coarser red_eps identifies two
points exactly when they are equal as disks, or both have radius < eps and
centers within eps of each other.  Membership of a unit-ball polynomial f
in the defining ideal of red_eps(x) is the exact inequality |f(x)| < eps,
which is what ideal_member computes.
"""

from collections import namedtuple
from fractions import Fraction
from math import floor

from .berkovich import gauss_norm, gauss_point, point_eq
from .errors import ChartMismatch, SupNormExceedsOne
from .field import PValue, _residue, norm

_ONE = PValue.one()

ReductionClass = namedtuple("ReductionClass", ["kind", "residue"])


class EpsClass:
    """An eps-reduction class, carried by a representative point."""

    __slots__ = ("eps", "representative")

    def __init__(self, eps, representative):
        _check_eps(eps)
        self.eps = eps
        self.representative = representative

    def contains(self, x):
        return eps_reduce_equal(self.representative, x, self.eps)

    def __repr__(self):
        return f"EpsClass(eps={self.eps!r}, representative={self.representative!r})"


def _check_eps(eps):
    if not isinstance(eps, PValue) or eps.is_zero or eps > _ONE:
        raise ValueError(f"eps must satisfy 0 < eps <= p^0, got {eps!r}")


def eps_reduce_equal(x, y, eps):
    """Whether red_eps(x) = red_eps(y).

    True iff the points are equal, or both radii are < eps and the centers
    differ by less than eps.  Requires both points in the same chart.
    """
    _check_eps(eps)
    if x.chart != y.chart:
        raise ChartMismatch(f"cannot reduce across charts {x.chart} and {y.chart}")
    if point_eq(x, y):
        return True
    return (
        x.radius < eps
        and y.radius < eps
        and norm(x.center - y.center, x.p) < eps
    )


def _require_unit_ball(f, p):
    sup = gauss_norm(f, gauss_point(p))
    if sup > _ONE:
        raise SupNormExceedsOne(
            f"polynomial has sup norm {sup!r} > 1 on the unit disk"
        )


def ideal_member(f, x, eps):
    """Whether f lies in the ideal defining red_eps(x), i.e. |f(x)| < eps."""
    _check_eps(eps)
    _require_unit_ball(f, x.p)
    return gauss_norm(f, x) < eps


def primary_witness(x, eps, f, g):
    """Power witness that the ideal of red_eps(x) is primary.

    If |fg(x)| < eps while |f(x)| >= eps, then |g(x)| < 1 and some power of
    g lands in the ideal; the minimal exponent n >= 1 with |g(x)|^n < eps
    is returned.  When the hypothesis fails the function returns None.
    Writing eps = p^e and |g(x)| = p^q with q < 0, the minimal n is the
    least integer strictly greater than e/q, i.e. floor(e/q) + 1.
    """
    _check_eps(eps)
    _require_unit_ball(f, x.p)
    _require_unit_ball(g, x.p)
    nf = gauss_norm(f, x)
    ng = gauss_norm(g, x)
    if nf * ng >= eps or nf < eps:
        return None
    if ng.is_zero:
        return 1
    assert ng < _ONE  # forced: eps <= |f(x)| and |f(x)| |g(x)| < eps
    ratio = Fraction(eps.exp) / ng.exp  # both exponents <= 0, q < 0
    return floor(ratio) + 1


def red_classical(x):
    """Classical reduction of a chart Z point of the closed unit disk.

    Radius one maps to the generic point of the special fiber, smaller
    radii map to the closed point given by the center's residue mod p.
    """
    if x.chart != "Z":
        raise ValueError("classical reduction is implemented on chart Z only")
    if norm(x.center, x.p) > _ONE:
        raise ValueError("the point lies outside the closed unit disk")
    if x.radius == _ONE:
        return ReductionClass("generic", None)
    return ReductionClass("closed", _residue(x.center, x.p))


def _partition(sample, eps):
    """Shared partition core: returns (classes, ids) in first-seen order.

    Points with radius < eps in chart Z (or W) are keyed by the residue of
    their center mod p^(floor(E) + 1) where eps = p^(-E): the valuation of
    a rational is an integer, so |a - b| < p^(-E) iff a = b mod that power.
    This keeps the common case linear; only points with radius >= eps fall
    back to pairwise comparison, and those can only match points of equal
    radius via point_eq.
    """
    _check_eps(eps)
    big_exp = -Fraction(eps.exp)  # E >= 0
    classes, ids = [], []
    by_key = {}
    big_reps = []  # (class index, representative) for radius >= eps points
    for x in sample:
        if norm(x.center, x.p) > _ONE:
            raise ValueError("partition points must lie in their chart's unit ball")
        if x.radius < eps:
            modulus = x.p ** (floor(big_exp) + 1)
            key = (x.chart, x.p, _residue(x.center, modulus))
            idx = by_key.get(key)
            if idx is None:
                idx = len(classes)
                by_key[key] = idx
                classes.append([])
        else:
            idx = None
            for j, rep in big_reps:
                if rep.p == x.p and rep.chart == x.chart and point_eq(rep, x):
                    idx = j
                    break
            if idx is None:
                idx = len(classes)
                classes.append([])
                big_reps.append((idx, x))
        classes[idx].append(x)
        ids.append(idx)
    return classes, ids


def partition_by_eps(sample, eps):
    """Partition a list of DiskPoints into eps-reduction classes.

    Class order is first-seen and points keep their input order inside a
    class.  Mixed charts are allowed; points in different charts are never
    identified.
    """
    return _partition(sample, eps)[0]


def eps_class_ids(sample, eps):
    """Class index for every sample point, aligned with partition_by_eps."""
    return _partition(sample, eps)[1]
