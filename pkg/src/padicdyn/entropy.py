"""Separated and covering counts for sampled orbit systems.

Conventions, fixed across the package: the window parameter n counts
observations, so two points are (n, E)-separated when their orbits land in
E-unrelated positions at some step k with 0 <= k < n, and a covering
center must be E-related at every such k.  S(0) and R(0) are degenerate
(a single point suffices).  Counts computed here are exact for the sample
and lower bounds for any ambient space the sample came from; the rate
estimator reports both the endpoint slope log(S(N))/N and the steepest
secant between observed times, the latter being the headline growth rate.

Orbit tables store one hashable label per point and step, with None where
the map is undefined; points whose label vanishes inside the window drop
out of that window's counts.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import floor, log

from .berkovich import DiskPoint
from .degree_growth import evaluate_plane, normalize_projective
from .dynamics import preimage_tree
from .errors import (
    CompositionNotContained,
    HorizonTooShort,
    OverlappingCells,
)
from .field import PValue, _residue, valuation
from .reduction import eps_class_ids

_ONE = PValue.one()

RateEstimate = namedtuple("RateEstimate", ["endpoint", "secant"])


class Entourage:
    """Union of cell squares over a label alphabet, plus the diagonal.

    cells is a list of frozensets of labels; two labels are related when
    they are equal or share a cell.  Cells may overlap unless the
    entourage was built through entourage_from_partition.
    """

    __slots__ = ("cells", "_cell_of", "is_partition")

    def __init__(self, cells, require_partition=False):
        cells = [frozenset(c) for c in cells]
        cell_of = {}
        overlap = False
        for i, c in enumerate(cells):
            for x in c:
                if x in cell_of:
                    overlap = True
                cell_of.setdefault(x, i)
        if require_partition and overlap:
            raise OverlappingCells("cells overlap; not a partition")
        self.cells = cells
        self.is_partition = not overlap
        self._cell_of = cell_of if self.is_partition else None

    def related(self, a, b):
        if a == b:
            return True
        if self._cell_of is not None:
            ia = self._cell_of.get(a)
            return ia is not None and ia == self._cell_of.get(b)
        return any(a in c and b in c for c in self.cells)

    def __repr__(self):
        return f"Entourage({len(self.cells)} cells, partition={self.is_partition})"


def entourage_from_partition(cells):
    """Entourage whose relation is 'same cell' for pairwise disjoint cells."""
    return Entourage(cells, require_partition=True)


class OrbitTable:
    """Sampled forward orbits: one row of labels per point.

    orbits[i][k] is the label of the k-th iterate of point i, or None when
    the iterate is undefined; all rows share one length horizon + 1.
    """

    __slots__ = ("points", "orbits", "horizon")

    def __init__(self, points, orbits):
        orbits = [list(row) for row in orbits]
        if len(points) != len(orbits):
            raise ValueError("one orbit row per point required")
        if orbits:
            lengths = {len(row) for row in orbits}
            if len(lengths) != 1:
                raise ValueError("orbit rows must share one length")
            horizon = lengths.pop() - 1
        else:
            horizon = 0
        for row in orbits:
            seen_none = False
            for entry in row:
                if entry is None:
                    seen_none = True
                elif seen_none:
                    raise ValueError("labels cannot reappear after an undefined step")
        self.points = list(points)
        self.orbits = orbits
        self.horizon = horizon

    def alive(self, n):
        """Indices whose first n steps are all defined."""
        return [
            i for i, row in enumerate(self.orbits)
            if all(row[k] is not None for k in range(n))
        ]


def _check_window(table, n):
    if n < 0:
        raise ValueError("window must be >= 0")
    if n > table.horizon:
        raise HorizonTooShort(f"window {n} exceeds table horizon {table.horizon}")


def _separated(table, e, i, j, n):
    oi, oj = table.orbits[i], table.orbits[j]
    return any(not e.related(oi[k], oj[k]) for k in range(n))


def separated_set(table, n, e):
    """Greedy maximal (n, E)-separated subset; returns (indices, size).

    Scans alive points in input order and keeps every point separated
    from all kept ones, which yields a maximal (not necessarily maximum)
    set, deterministically.  The size is exact for partition entourages,
    where separation is equality of the step-label vectors.
    """
    _check_window(table, n)
    chosen = []
    for i in table.alive(n):
        if all(_separated(table, e, i, j, n) for j in chosen):
            chosen.append(i)
    return chosen, len(chosen)


def covering_number(table, n, e):
    """Greedy (n, E)-covering count of the alive sample.

    The greedy maximal separated set doubles as a covering family: any
    point not close to one of its members would have been added when
    scanned.  Its size therefore upper bounds the exact minimal covering
    number of the sample.
    """
    return separated_set(table, n, e)[1]


def exact_separated_size(table, n, e, limit=15):
    """Largest (n, E)-separated subset, by exhaustive search (small samples)."""
    _check_window(table, n)
    idx = table.alive(n)
    if len(idx) > limit:
        raise ValueError(f"exhaustive search capped at {limit} points")
    pairs = {
        (i, j)
        for i, j in combinations(idx, 2)
        if _separated(table, e, i, j, n)
    }
    best = 1 if idx else 0
    for size in range(len(idx), 1, -1):
        for sub in combinations(idx, size):
            if all((a, b) in pairs for a, b in combinations(sub, 2)):
                return size
    return best


def exact_covering_number(table, n, e, limit=15):
    """Minimal size of a subset of the alive sample covering it, exhaustively."""
    _check_window(table, n)
    idx = table.alive(n)
    if len(idx) > limit:
        raise ValueError(f"exhaustive search capped at {limit} points")
    if not idx:
        return 0
    close = {
        i: {j for j in idx if not _separated(table, e, i, j, n)}
        for i in idx
    }
    for size in range(1, len(idx) + 1):
        for sub in combinations(idx, size):
            covered = set()
            for c in sub:
                covered |= close[c]
            if covered >= set(idx):
                return size
    return len(idx)


def chain_inequality_check(table, n, e, e_prime):
    """Exact chain R(n, E) <= S(n, E) <= R(n, E') on a small sample.

    Requires E' o E' to be contained in E over the labels present in the
    table (raises CompositionNotContained otherwise); returns True after
    asserting both inequalities exhaustively.
    """
    _check_window(table, n)
    labels = sorted(
        {x for row in table.orbits for x in row if x is not None},
        key=repr,
    )
    for a in labels:
        reach = [c for c in labels if e_prime.related(a, c)]
        for c in reach:
            for b in labels:
                if e_prime.related(c, b) and not e.related(a, b):
                    raise CompositionNotContained(
                        f"E'oE' relates {a!r} and {b!r} but E does not"
                    )
    r_e = exact_covering_number(table, n, e)
    s_e = exact_separated_size(table, n, e)
    r_ep = exact_covering_number(table, n, e_prime)
    assert r_e <= s_e <= r_ep
    return True


def entropy_rate(series):
    """Growth-rate estimates from the counts S(1), ..., S(N).

    endpoint is log(S(N)) / N; secant is the steepest slope
    (log S(n) - log S(m)) / (n - m) over 1 <= m < n <= N.  A constant
    series has secant 0; a doubling series has both equal to log 2.  Both
    are lower-bound estimators relative to any ambient system.
    """
    if len(series) < 3:
        raise ValueError("need at least three observations")
    if any(s < 1 for s in series):
        raise ValueError("counts must be positive")
    logs = [log(s) for s in series]
    n = len(series)
    endpoint = logs[-1] / n
    secant = max(
        (logs[b] - logs[a]) / (b - a)
        for a in range(n)
        for b in range(a + 1, n)
    )
    return RateEstimate(endpoint, secant)


def admissible_mask(f, sample, n):
    """Definedness masks of the first n iterates of a plane map.

    mask[i][k] says whether the k-th iterate of sample point i exists,
    i.e. no earlier image hit the indeterminacy locus (all three
    components vanishing, tested exactly).  mask[i][0] is always True.
    """
    masks = []
    for point in sample:
        row = [True]
        current = normalize_projective(point)
        if current is None:
            raise ValueError("sample point has all coordinates zero")
        for _ in range(n):
            if current is None:
                row.append(False)
                continue
            current = normalize_projective(evaluate_plane(f, current))
            row.append(current is not None)
        masks.append(row)
    return masks


def plane_orbit_table(f, sample, n):
    """OrbitTable of exact projective orbits of a plane map.

    Labels are primitive integer coordinate tuples; undefined steps (after
    the orbit hits the indeterminacy locus) are None, matching
    admissible_mask.
    """
    rows = []
    points = []
    for point in sample:
        current = normalize_projective(point)
        if current is None:
            raise ValueError("sample point has all coordinates zero")
        points.append(current)
        row = [current]
        for _ in range(n):
            if current is not None:
                current = normalize_projective(evaluate_plane(f, current))
            row.append(current)
        rows.append(row)
    return OrbitTable(points, rows)


def disk_orbit_table(step_points, eps):
    """Classify precomputed disk-point orbits into eps-reduction classes.

    step_points lists, for each sample point, its forward orbit as
    DiskPoints (all rows one length).  Labels are class indices from a
    single partition of all points of all steps, so equal labels mean
    eps-equal points even across steps.  Returns (OrbitTable, Entourage).
    """
    if not step_points:
        return OrbitTable([], []), Entourage([])
    lengths = {len(row) for row in step_points}
    if len(lengths) != 1:
        raise ValueError("orbit rows must share one length")
    width = lengths.pop()
    flat = [x for row in step_points for x in row]
    ids = eps_class_ids(flat, eps)
    nclasses = max(ids) + 1
    orbits = [
        ids[i * width:(i + 1) * width]
        for i in range(len(step_points))
    ]
    table = OrbitTable([row[0] for row in step_points], orbits)
    ent = entourage_from_partition([frozenset({i}) for i in range(nclasses)])
    return table, ent


def polynomial_orbit_table(coeffs, p, centers, eps, horizon):
    """Orbit system of a p-integral polynomial on classical points.

    Reduction mod p^K is a ring homomorphism on p-integral rationals, and
    for radius-zero points the eps-class at eps = p^(-E) depends only on
    the residue mod p^K with K = floor(E) + 1.  Iterating residues mod
    p^K therefore computes the exact eps-classes of the true orbit, with
    no numeric approximation, which keeps deep horizons cheap.
    """
    if not isinstance(eps, PValue) or eps.is_zero or eps > _ONE:
        raise ValueError("eps must satisfy 0 < eps <= p^0")
    coeffs = [Fraction(c) for c in coeffs]
    for c in coeffs:
        if c != 0 and valuation(c, p) < 0:
            raise ValueError("polynomial coefficients must be p-integral")
    modulus = p ** (floor(-Fraction(eps.exp)) + 1)
    cs = [_residue(c, modulus) for c in coeffs]

    def step(v):
        acc = 0
        for c in reversed(cs):
            acc = (acc * v + c) % modulus
        return acc

    rows = []
    for center in centers:
        center = Fraction(center)
        if valuation(center, p) < 0:
            raise ValueError("sample centers must be p-integral")
        v = _residue(center, modulus)
        row = [v]
        for _ in range(horizon):
            v = step(v)
            row.append(v)
        rows.append(row)
    step_points = [
        [DiskPoint("Z", v, PValue.zero(), p) for v in row]
        for row in rows
    ]
    return disk_orbit_table(step_points, eps)


def quadratic_tree_orbit_table(c, target, depth, precision, p, eps, scale=1):
    """Orbit system of the depth-level preimage tree of z -> z^2 - c.

    Leaves iterate forward exactly for depth steps; each value is mapped
    to the rescaled coordinate scale * z before classification, which
    lets a sample sitting on a circle |z| = |1/scale| be compared at unit
    scale.  Returns (OrbitTable, Entourage, leaves).
    """
    tree = preimage_tree(c, target, depth, precision, p)
    leaves = tree.leaves()
    c = Fraction(c)
    scale = Fraction(scale)
    step_points = []
    for leaf in leaves:
        z = leaf.value
        row = []
        for _ in range(depth + 1):
            u = scale * z
            if u != 0 and valuation(u, p) < 0:
                raise ValueError("rescaled orbit value leaves the unit disk")
            row.append(DiskPoint("Z", u, PValue.zero(), p))
            z = z * z - c
        step_points.append(row)
    table, ent = disk_orbit_table(step_points, eps)
    return table, ent, leaves
