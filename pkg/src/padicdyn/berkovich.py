"""Points of the Berkovich projective line over Q_p with exact data.

A DiskPoint is a closed disk D(center, radius) with rational center and
PValue radius, living in one of two unit-disk charts: chart "Z" covers
|z| <= 1 and chart "W" covers |z| >= 1 through w = 1/z.  Radius zero gives
a classical (type I) point, a p-power radius a type II point.  The Gauss
point is the disk of radius one; both charts see it, so it canonicalizes
to chart Z with center 0.  Seminorms are evaluated through gauss_norm,
which is exact because centers, coefficients and radii all stay rational.
"""

from fractions import Fraction

from .errors import ChartMismatch
from .field import (
    PValue,
    format_pvalue,
    format_rational,
    norm,
    parse_pvalue,
    parse_rational,
    require_prime,
)
from . import upoly

_ONE = PValue.one()


class DiskPoint:
    """A closed disk in one chart of the projective line.

    Centers inside the chart's unit ball are the canonical case and get
    canonicalized: radius one becomes the Gauss point in chart Z, and a
    chart W center on the unit circle is moved to chart Z through the
    inversion z = 1/w (an isometry on units).  Canonical points of the two
    charts then overlap nowhere, so equality testing never changes
    coordinates.  A center outside the unit ball is also accepted, as a
    plain disk descriptor in that coordinate (gauss_norm recenters exactly
    either way); such descriptors duplicate points of the other chart and
    the map modules never produce them.
    """

    __slots__ = ("chart", "center", "radius", "p")

    def __init__(self, chart, center, radius, p):
        require_prime(p)
        if chart not in ("Z", "W"):
            raise ValueError(f"chart must be 'Z' or 'W', got {chart!r}")
        if not isinstance(radius, PValue):
            raise ValueError("radius must be a PValue")
        center = Fraction(center)
        if radius > _ONE:
            raise ValueError("radius exceeds the unit disk of the chart")
        if norm(center, p) <= _ONE:
            if radius == _ONE:
                chart, center = "Z", Fraction(0)
            elif chart == "W" and norm(center, p) == _ONE:
                chart, center = "Z", 1 / center
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("DiskPoint is immutable")

    @property
    def is_classical(self):
        return self.radius.is_zero

    def __repr__(self):
        return (
            f"DiskPoint({self.chart!r}, {format_rational(self.center)},"
            f" {format_pvalue(self.radius)}, p={self.p})"
        )

    def __eq__(self, other):
        if not isinstance(other, DiskPoint):
            return NotImplemented
        return point_eq(self, other)

    # equality is up to recentering, so field-based hashing would break it
    __hash__ = None


def gauss_point(p):
    return DiskPoint("Z", 0, _ONE, p)


def classical_point(a, p, chart="Z"):
    return DiskPoint(chart, a, PValue.zero(), p)


def _check_same_p(x, y):
    if x.p != y.p:
        raise ValueError(f"points live over different primes {x.p} and {y.p}")


def point_eq(x, y):
    """Whether two disk points coincide.

    Same chart (after canonicalization), same radius, and centers within
    the common radius of each other: D(a, r) = D(b, r) iff |a - b| <= r.
    """
    _check_same_p(x, y)
    if x.chart != y.chart:
        return False
    if x.radius != y.radius:
        return False
    return norm(x.center - y.center, x.p) <= x.radius


def point_leq(x, y):
    """Whether x <= y in the disk order, i.e. D_x is contained in D_y.

    Both points must sit in the same chart; after canonicalization the two
    chart regions are disjoint, so cross-chart comparison is a usage error.
    """
    _check_same_p(x, y)
    if x.chart != y.chart:
        raise ChartMismatch(f"cannot compare chart {x.chart} with chart {y.chart}")
    return x.radius <= y.radius and norm(x.center - y.center, x.p) <= y.radius


def gauss_norm(coeffs, x):
    """|P(x)| for a polynomial P with rational coefficients.

    coeffs lists c_0, ..., c_d in the coordinate of x's chart, low degree
    first.  At the point D(a, r) the seminorm is max_i |b_i| r^i where the
    b_i are the coefficients of P(T + a); with r = 0 the convention
    r^0 = 1 reduces this to |P(a)|, so classical points need no special
    case.
    """
    cs = upoly.trim(coeffs)
    if not cs:
        return PValue.zero()
    shifted = upoly.shift(cs, x.center)
    best = PValue.zero()
    for i, b in enumerate(shifted):
        term = norm(b, x.p) * x.radius ** i
        if term > best:
            best = term
    return best


def to_json(x):
    return {
        "chart": x.chart,
        "center": format_rational(x.center),
        "radius": format_pvalue(x.radius),
    }


def from_json(obj, p):
    try:
        chart = obj["chart"]
        center = parse_rational(obj["center"])
        radius = parse_pvalue(obj["radius"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed disk point object: {obj!r}") from exc
    return DiskPoint(chart, center, radius, p)
