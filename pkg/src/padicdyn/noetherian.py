"""Finite spectral spaces, ideal lattices of small rings, and exact cover
complexity for their self-maps.

A finite poset stands in for a finite spectral space: opens are up-sets,
closed sets are down-sets, irreducible closed sets are principal down-sets
and the generic point of one is its top element.  Cover complexity N is
computed exactly by branch-and-bound set cover on the joint refinement of
iterated preimages, and recurrence_certificate reproduces, at this finite
scale, the chain-of-closed-sets argument that bounds N(n) by a linear
recurrence with subexponential constants.

The Priestley check is intentionally modest: at finite scale the patch
topology is discrete, so the axioms reduce to order-separation witnesses
and the (automatic) descending chain condition.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import product

from .errors import (
    NotACover,
    NotAHomomorphism,
    NotContinuous,
    SearchBudget,
    SizeBound,
)
from .exactlin import nullspace

DEFAULT_RING_BOUND = 4096
DEFAULT_NODE_CAP = 2 ** 20


class FinitePoset:
    """Finite partially ordered set with explicit relation pairs.

    relation lists pairs (a, b) meaning a <= b; the diagonal is added
    automatically, antisymmetry and transitivity are validated.  Opens are
    up-sets throughout this module.
    """

    __slots__ = ("elements", "_le", "_index")

    def __init__(self, elements, relation):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate elements")
        known = set(elements)
        le = {(a, a) for a in elements}
        for a, b in relation:
            if a not in known or b not in known:
                raise ValueError(f"relation pair ({a!r}, {b!r}) uses unknown elements")
            le.add((a, b))
        for a, b in list(le):
            if a != b and (b, a) in le:
                raise ValueError(f"antisymmetry fails on {a!r}, {b!r}")
        for a, b in list(le):
            for c in elements:
                if (b, c) in le and (a, c) not in le:
                    raise ValueError(f"transitivity fails on {a!r} <= {b!r} <= {c!r}")
        self.elements = elements
        self._le = frozenset(le)
        self._index = {e: i for i, e in enumerate(elements)}

    def leq(self, a, b):
        return (a, b) in self._le

    def up_set(self, x):
        return frozenset(z for z in self.elements if self.leq(x, z))

    def down_set(self, x):
        return frozenset(z for z in self.elements if self.leq(z, x))

    def is_up_set(self, s):
        s = frozenset(s)
        return all(z in s for x in s for z in self.elements if self.leq(x, z))

    def is_down_set(self, s):
        s = frozenset(s)
        return all(z in s for x in s for z in self.elements if self.leq(z, x))

    def maximal(self, subset):
        subset = list(subset)
        return [
            x for x in subset
            if not any(y != x and self.leq(x, y) for y in subset)
        ]

    def components(self, closed):
        """Irreducible components of a down-set: principal down-sets of its
        maximal points, each carried with its generic point.

        Returns a list of (generic point, frozenset) pairs in element order.
        """
        closed = frozenset(closed)
        if not self.is_down_set(closed):
            raise ValueError("components are defined for closed (down) sets")
        out = []
        for m in sorted(self.maximal(closed), key=self._index.get):
            out.append((m, self.down_set(m)))
        return out

    def principal_up_cover(self):
        """The cover of the space by all principal opens (one per element)."""
        return [self.up_set(x) for x in self.elements]

    def __repr__(self):
        return f"FinitePoset({len(self.elements)} elements)"


def _as_total_map(poset, f):
    if callable(f):
        f = {x: f(x) for x in poset.elements}
    out = dict(f)
    for x in poset.elements:
        if x not in out:
            raise ValueError(f"map undefined on {x!r}")
        if out[x] not in poset._index:
            raise ValueError(f"map sends {x!r} outside the space")
    return out


def continuity_witness(poset, f):
    """None if preimages of principal opens are open; else a witness pair."""
    f = _as_total_map(poset, f)
    for x in poset.elements:
        target = poset.up_set(x)
        pre = frozenset(z for z in poset.elements if f[z] in target)
        if not poset.is_up_set(pre):
            return (x, pre)
    return None


PriestleyReport = namedtuple("PriestleyReport", ["ok", "witnesses", "failure"])


def priestley_check(space):
    """Order-separation witnesses for a finite poset.

    Accepts a FinitePoset or a raw (elements, relation) pair; the raw path
    validates the axioms and reports the first failure instead of raising.
    On success the witness table maps every ordered pair (x, y) with
    y not <= x to the principal down-set of x, which contains x and misses
    y; the descending chain condition is automatic on finite posets.
    """
    if not isinstance(space, FinitePoset):
        elements, relation = space
        elements = tuple(elements)
        le = {(a, a) for a in elements}
        le.update((a, b) for a, b in relation)
        for a, b in le:
            if a != b and (b, a) in le:
                return PriestleyReport(False, {}, ("antisymmetry", (a, b)))
        for a, b in le:
            for c in elements:
                if (b, c) in le and (a, c) not in le:
                    return PriestleyReport(False, {}, ("transitivity", (a, b, c)))
        space = FinitePoset(elements, le)
    witnesses = {}
    for x in space.elements:
        kx = space.down_set(x)
        for y in space.elements:
            if not space.leq(y, x):
                witnesses[(x, y)] = kx
    return PriestleyReport(True, witnesses, None)


# --- finite commutative rings -------------------------------------------------


class ZMod:
    """The ring of integers mod m."""

    def __init__(self, m):
        if m < 2:
            raise ValueError("need modulus >= 2")
        self.m = m
        self.elements = tuple(range(m))
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def __repr__(self):
        return f"ZMod({self.m})"


class TruncatedPolyRing:
    """F_p[x] / (x^k), elements as coefficient tuples of length k."""

    def __init__(self, p, k):
        if k < 1:
            raise ValueError("need k >= 1")
        self.p = p
        self.k = k
        self.elements = tuple(product(range(p), repeat=k))
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1))
        self.x = tuple([0, 1] + [0] * (k - 2)) if k >= 2 else self.zero

    def add(self, a, b):
        return tuple((u + v) % self.p for u, v in zip(a, b))

    def mul(self, a, b):
        out = [0] * self.k
        for i, u in enumerate(a):
            if u == 0:
                continue
            for j, v in enumerate(b):
                if i + j >= self.k:
                    break
                out[i + j] = (out[i + j] + u * v) % self.p
        return tuple(out)

    def __repr__(self):
        return f"TruncatedPolyRing(p={self.p}, k={self.k})"


class ProductRing:
    """Direct product of two finite rings, elements as pairs."""

    def __init__(self, r1, r2):
        self.factors = (r1, r2)
        self.elements = tuple(product(r1.elements, r2.elements))
        self.zero = (r1.zero, r2.zero)
        self.one = (r1.one, r2.one)

    def add(self, a, b):
        return (self.factors[0].add(a[0], b[0]), self.factors[1].add(a[1], b[1]))

    def mul(self, a, b):
        return (self.factors[0].mul(a[0], b[0]), self.factors[1].mul(a[1], b[1]))

    def __repr__(self):
        return f"ProductRing({self.factors[0]!r}, {self.factors[1]!r})"


def identity_map(ring):
    return {a: a for a in ring.elements}


def power_map(ring, q):
    """a -> a^q; a ring homomorphism when q is the characteristic exponent."""
    if q < 1:
        raise ValueError("need q >= 1")
    out = {}
    for a in ring.elements:
        acc = a
        for _ in range(q - 1):
            acc = ring.mul(acc, a)
        out[a] = acc
    return out


def _ideal_closure(ring, gens):
    s = {ring.zero} | set(gens)
    while True:
        new = set()
        for a in s:
            for b in s:
                v = ring.add(a, b)
                if v not in s:
                    new.add(v)
        for r in ring.elements:
            for a in s:
                v = ring.mul(r, a)
                if v not in s:
                    new.add(v)
        if not new:
            return frozenset(s)
        s |= new


def _ideal_sort_key(ideal):
    return (len(ideal), tuple(sorted(repr(e) for e in ideal)))


class IdealLattice:
    """All proper ideals of a finite commutative ring, inclusion-ordered."""

    def __init__(self, ring, ideals):
        self.ring = ring
        self.ideals = tuple(sorted(ideals, key=_ideal_sort_key))
        self._index = {ideal: i for i, ideal in enumerate(self.ideals)}

    def index(self, ideal):
        return self._index[frozenset(ideal)]

    def leq(self, i, j):
        return self.ideals[i] <= self.ideals[j]

    def as_poset(self, reverse=True):
        """Indices of ideals as a FinitePoset; reverse inclusion by default,
        which makes principal opens the families of sub-ideals."""
        n = len(self.ideals)
        rel = []
        for i in range(n):
            for j in range(n):
                contained = self.ideals[i] <= self.ideals[j]
                if contained:
                    rel.append((j, i) if reverse else (i, j))
        return FinitePoset(range(n), rel)

    def __repr__(self):
        return f"IdealLattice({len(self.ideals)} ideals of {self.ring!r})"


def enumerate_ideals(ring, bound=DEFAULT_RING_BOUND):
    """Complete list of proper ideals, by closure-extension search.

    Starting from (0), every ideal is reachable by repeatedly adjoining an
    outside element and closing up, so the breadth-first sweep is
    exhaustive.  Raises SizeBound when the ring is larger than bound.
    """
    if len(ring.elements) > bound:
        raise SizeBound(f"ring has {len(ring.elements)} elements, bound {bound}")
    zero_ideal = frozenset({ring.zero})
    seen = {zero_ideal}
    queue = [zero_ideal]
    while queue:
        ideal = queue.pop()
        for a in ring.elements:
            if a in ideal:
                continue
            grown = _ideal_closure(ring, ideal | {a})
            if ring.one in grown:
                continue  # not proper
            if grown not in seen:
                seen.add(grown)
                queue.append(grown)
    lattice = IdealLattice(ring, seen)
    for ideal in lattice.ideals:  # closure sanity
        assert ring.zero in ideal
    return lattice


def induced_ideal_map(ring, phi, lattice):
    """Self-map of the ideal lattice induced by a verified endomorphism.

    phi is an element map a -> phi(a); it must be unital, additive and
    multiplicative (NotAHomomorphism otherwise).  Each proper ideal pulls
    back to the proper ideal phi^(-1)(I); the result maps lattice indices
    to lattice indices.
    """
    phi = dict(phi)
    for a in ring.elements:
        if a not in phi:
            raise ValueError(f"endomorphism undefined on {a!r}")
    if phi[ring.one] != ring.one:
        raise NotAHomomorphism("does not fix 1")
    for a in ring.elements:
        for b in ring.elements:
            if phi[ring.add(a, b)] != ring.add(phi[a], phi[b]):
                raise NotAHomomorphism(f"additivity fails at ({a!r}, {b!r})")
            if phi[ring.mul(a, b)] != ring.mul(phi[a], phi[b]):
                raise NotAHomomorphism(f"multiplicativity fails at ({a!r}, {b!r})")
    out = {}
    for i, ideal in enumerate(lattice.ideals):
        pre = frozenset(a for a in ring.elements if phi[a] in ideal)
        out[i] = lattice.index(pre)
    return out


# --- cover complexity ---------------------------------------------------------


def _cover_masks(poset, cover):
    index = poset._index
    full = (1 << len(poset.elements)) - 1
    masks = []
    for member in cover:
        member = frozenset(member)
        if not poset.is_up_set(member):
            raise NotACover(f"cover member {sorted(map(repr, member))} is not open")
        m = 0
        for e in member:
            m |= 1 << index[e]
        masks.append(m)
    union = 0
    for m in masks:
        union |= m
    if union != full:
        raise NotACover("members do not cover the space")
    return masks, full


def _preimage_mask(poset, f, mask):
    out = 0
    for i, e in enumerate(poset.elements):
        if mask >> poset._index[f[e]] & 1:
            out |= 1 << i
    return out


def _dedupe(seq):
    seen = set()
    out = []
    for x in seq:
        if x and x not in seen:
            seen.add(x)
            out.append(x)
    return out


def exact_min_cover(universe, masks, node_cap=DEFAULT_NODE_CAP):
    """Exact minimum set cover over bitmasks, branch and bound.

    Candidates are explored in the canonical order (descending popcount,
    then ascending mask value), the first optimum found is kept, and the
    search raises SearchBudget past node_cap nodes.
    """
    masks = _dedupe(masks)
    order = sorted(range(len(masks)), key=lambda i: (-bin(masks[i]).count("1"), masks[i]))
    best = {"size": None, "chosen": None}
    nodes = {"n": 0}

    def visit(uncovered, chosen):
        nodes["n"] += 1
        if nodes["n"] > node_cap:
            raise SearchBudget(f"set-cover search exceeded {node_cap} nodes")
        if uncovered == 0:
            if best["size"] is None or len(chosen) < best["size"]:
                best["size"] = len(chosen)
                best["chosen"] = tuple(chosen)
            return
        if best["size"] is not None and len(chosen) + 1 >= best["size"]:
            return
        lowest = uncovered & -uncovered
        for i in order:
            if masks[i] & lowest:
                chosen.append(i)
                visit(uncovered & ~masks[i], chosen)
                chosen.pop()

    visit(universe, [])
    if best["size"] is None:
        raise NotACover("family does not cover the universe")
    return best["size"], tuple(masks[i] for i in best["chosen"])


def _joint_cells_sequence(poset, f, cover, nmax, node_cap):
    """N(0..nmax) where N(n) is the minimal subcover size of the join of
    the first n preimage refinements; N(0) is 1 by convention."""
    f = _as_total_map(poset, f)
    witness = continuity_witness(poset, f)
    if witness is not None:
        raise NotContinuous(
            f"preimage of the principal open at {witness[0]!r} is not open"
        )
    masks, full = _cover_masks(poset, cover)
    values = [1]
    if nmax == 0:
        return values
    cells = _dedupe(masks)
    values.append(exact_min_cover(full, cells, node_cap)[0])
    pres = list(masks)
    for _ in range(2, nmax + 1):
        pres = [_preimage_mask(poset, f, m) for m in pres]
        cells = _dedupe(c & u for c in cells for u in pres)
        values.append(exact_min_cover(full, cells, node_cap)[0])
    return values


def cover_complexity(poset, f, cover, n, node_cap=DEFAULT_NODE_CAP):
    """Exact minimal subcover cardinality of the n-step joint refinement.

    The join collects intersections of cover members with preimages of
    cover members under the first n - 1 iterates; n = 0 returns 1.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    return _joint_cells_sequence(poset, f, cover, n, node_cap)[n]


def cover_complexity_sequence(poset, f, cover, nmax, node_cap=DEFAULT_NODE_CAP):
    """The list N(0), N(1), ..., N(nmax), sharing the incremental join."""
    if nmax < 0:
        raise ValueError("need nmax >= 0")
    return _joint_cells_sequence(poset, f, cover, nmax, node_cap)


# --- recurrence certificates --------------------------------------------------

Certificate = namedtuple(
    "Certificate",
    ["eps", "Ms", "Ns", "chain", "values", "horizon", "start", "C", "ok", "note"],
)


def _orbit_member_index(poset, f, cover, point, steps):
    """Cover indices of the first steps iterates of point: for each i the
    first cover member containing f^i(point)."""
    out = []
    cur = point
    for _ in range(steps + 1):
        idx = next(
            (j for j, member in enumerate(cover) if cur in member),
            None,
        )
        assert idx is not None  # the cover covers the space
        out.append(idx)
        cur = f[cur]
    return out


def _shrink_component(poset, f, cover, generic, down, window):
    """The closed subset left after removing the window-length tube of the
    generic point: down minus the set of points that track the generic
    point's cover members for window steps."""
    picks = _orbit_member_index(poset, f, cover, generic, window)
    tube = set(down)
    for i, member_idx in enumerate(picks):
        member = cover[member_idx]
        cur_ok = set()
        for x in tube:
            y = x
            for _ in range(i):
                y = f[y]
            if y in member:
                cur_ok.add(x)
        tube = cur_ok
    return frozenset(down) - frozenset(tube)


def recurrence_certificate(poset, f, cover, eps, horizon=12,
                           node_cap=DEFAULT_NODE_CAP):
    """Certificate that N(n) obeys a linear recurrence with small constants.

    Builds the strictly decreasing chain of closed sets: starting from the
    whole space, each step removes from every irreducible component the
    tube of points shadowing the component's generic point for N_i steps.
    M_i is the running product of component counts, and each N_i is the
    least admissible window: strictly larger than the previous one, large
    enough that M_i (1 + eps)^(1 - N_i) <= eps / 10^i, and past the
    observed stabilization of N(n) so that the recurrence
    N(n) <= N(n-1) + sum_i M_i N(n - N_i) can be checked numerically for
    N_k <= n <= horizon.  The constant C = max N(n) / (1 + eps)^n makes
    N(n) <= C (1 + eps)^n exact over the verified range.  When N(n) is
    constant from n = 1 the chain is empty and the certificate is the
    monotone check alone.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if horizon < 3:
        raise ValueError("need horizon >= 3")
    f = _as_total_map(poset, f)
    cover = [frozenset(u) for u in cover]
    values = _joint_cells_sequence(poset, f, cover, horizon, node_cap)
    increases = [n for n in range(2, horizon + 1) if values[n] > values[n - 1]]
    onset = (increases[-1] + 1) if increases else 1

    growth = 1 + eps
    c_const = max(Fraction(values[n]) / growth ** n for n in range(horizon + 1))

    if onset == 1:
        ok = all(values[n] <= values[n - 1] for n in range(2, horizon + 1))
        return Certificate(eps, [], [], [], values, horizon, 2, c_const, ok,
                           "complexity constant from n = 1; empty chain")

    ms, ns, chain = [], [], []
    prod_m = 1
    prev_n = 0
    current = frozenset(poset.elements)
    i = 0
    while current:
        i += 1
        comps = poset.components(current)
        prod_m *= len(comps)
        ms.append(prod_m)
        target = Fraction(prod_m) * Fraction(10) ** i / eps
        t, pw = 1, Fraction(1)
        while pw < target:
            pw *= growth
            t += 1
        window = max(prev_n + 1, t, onset)
        ns.append(window)
        prev_n = window
        chain.append(current)
        nxt = frozenset()
        for generic, down in comps:
            nxt |= _shrink_component(poset, f, cover, generic, down, window)
        assert nxt < current  # every component loses its generic point
        current = nxt

    start = ns[-1] if ns else 2
    note = ""
    if start > horizon:
        ok = False
        note = "chain windows exceed the horizon; recurrence not verifiable"
    else:
        ok = True
        for n in range(start, horizon + 1):
            bound = values[n - 1] + sum(
                m * values[n - w] for m, w in zip(ms, ns)
            )
            if values[n] > bound:
                ok = False
                note = f"recurrence fails at n = {n}"
                break
    for idx, (m, w) in enumerate(zip(ms, ns), start=1):
        assert Fraction(m) * growth ** (1 - w) <= eps / Fraction(10) ** idx
    return Certificate(eps, ms, ns, chain, values, horizon, start, c_const,
                       ok, note)


# --- invariant measures on finite systems -------------------------------------


def periodic_cycles(elements, f):
    """The cycles of a functional graph, as tuples starting at the point
    with the smallest repr, in first-seen order."""
    elements = list(elements)
    f = dict(f)
    seen_cycles = []
    seen_sets = []
    for x in elements:
        cur = x
        for _ in range(len(elements)):
            cur = f[cur]
        # cur is now on a cycle; walk it
        cycle = [cur]
        nxt = f[cur]
        while nxt != cur:
            cycle.append(nxt)
            nxt = f[nxt]
        cset = frozenset(cycle)
        if cset in seen_sets:
            continue
        seen_sets.append(cset)
        k = min(range(len(cycle)), key=lambda i: repr(cycle[i]))
        seen_cycles.append(tuple(cycle[k:] + cycle[:k]))
    return seen_cycles


def cycle_measures(elements, f):
    """Uniform probability measure on each cycle, as element -> mass dicts."""
    return [
        {e: Fraction(1, len(cycle)) for e in cycle}
        for cycle in periodic_cycles(elements, f)
    ]


def invariant_kernel_dimension(elements, f):
    """Dimension of the space of invariant signed measures, exactly.

    A measure mu is invariant when mu(f^(-1)(y)) = mu(y) for every y; the
    kernel of (P - I) for the transfer matrix P is computed over Q.
    """
    elements = list(elements)
    f = dict(f)
    n = len(elements)
    idx = {e: i for i, e in enumerate(elements)}
    rows = [[Fraction(0)] * n for _ in range(n)]
    for x in elements:
        rows[idx[f[x]]][idx[x]] += 1
    for i in range(n):
        rows[i][i] -= 1
    return len(nullspace(rows))
