"""Deterministic batch front end.

Each run executes one subcommand on one JSON input and writes one text
artifact (JSON or CSV) to --output or stdout.  Identical input bytes, flags
and seed give identical output bytes: all randomness flows from a single
random.Random(seed), consumed only by the random sample generator of
entropy-sample (one randrange call per requested center, in sample order),
CSV is written with '.' decimals and no locale, and JSON objects are
serialized with sorted keys.

Exit codes: 0 success, 2 malformed input (schema or value errors), 3
exhausted budget (bit, size or search bounds), 1 any other domain error,
reported by its module error name on stderr.

Input schemas by subcommand:

  good-reduction   {"p", "type": "p1", "F", "G"} with each form a list of
                   [coefficient, "expZ,expW"] terms of one total degree.
  degseq           {"type": "p2", "components": [t1, t2, t3], "nmax"} with
                   terms [coefficient, "expX,expY,expZ"].
  dyndeg           {"type": "monomial", "matrix": [[...], ...]} plus an
                   optional exact "width" for the certification bracket.
  entropy-sample   {"p", "map": p1-polynomial map, "eps": "p^-1",
                   "horizon", "sample"}; sample kinds: "points" (explicit
                   rational centers), "random-integers" (count drawn from
                   the seed), "preimage-tree" (c, target, depth, precision,
                   scale).
  eps-reduce       {"p", "eps", "points": [disk point objects]}.
  noetherian       {"epsilon", "horizon"} plus either {"ring", also
                   "endomorphism"} or {"poset", "map", "cover"}.
  keylemma         {"d1", "d2", "eps", "nmax"}.
"""

import argparse
import json
import random
import sys
from fractions import Fraction
from math import floor, log

from . import berkovich, degree_growth, dynamics, entropy, noetherian, reduction
from .errors import BudgetError, ToolkitError
from .field import format_rational, parse_pvalue, parse_rational, valuation


class SchemaError(Exception):
    """The input does not match the subcommand's schema."""


def _load_payload(path):
    try:
        if path is None or path == "-":
            raw = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError("top-level input must be a JSON object")
    return payload


def _need(payload, key, kinds, what):
    if key not in payload:
        raise SchemaError(f"missing field {key!r}")
    value = payload[key]
    if not isinstance(value, kinds):
        raise SchemaError(f"field {key!r} must be {what}")
    return value


def _coefficient(raw):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise SchemaError(f"coefficient must be a string or integer, got {raw!r}")
    return parse_rational(str(raw))


def _term_list(raw, arity, label):
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"component {label} must be a nonempty term list")
    terms = []
    for item in raw:
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError(f"term {item!r} must be [coefficient, exponents]")
        coeff = _coefficient(item[0])
        if not isinstance(item[1], str):
            raise SchemaError(f"exponents must be a comma string, got {item[1]!r}")
        parts = item[1].split(",")
        if len(parts) != arity:
            raise SchemaError(f"expected {arity} exponents in {item[1]!r}")
        try:
            exps = tuple(int(part) for part in parts)
        except ValueError as exc:
            raise SchemaError(f"non-integer exponent in {item[1]!r}") from exc
        if any(e < 0 for e in exps):
            raise SchemaError(f"negative exponent in {item[1]!r}")
        terms.append((coeff, exps))
    return terms


def _parse_p1_map(payload):
    p = _need(payload, "p", int, "an integer prime")
    if _need(payload, "type", str, "a string") != "p1":
        raise SchemaError('field "type" must be "p1"')
    f_terms = _term_list(_need(payload, "F", list, "a term list"), 2, "F")
    g_terms = _term_list(_need(payload, "G", list, "a term list"), 2, "G")
    degrees = {a + b for _, (a, b) in f_terms + g_terms}
    if len(degrees) != 1:
        raise SchemaError("all terms of F and G must share one total degree")
    d = degrees.pop()
    if d < 1:
        raise SchemaError("the map must have degree at least 1")
    fs = [Fraction(0)] * (d + 1)
    gs = [Fraction(0)] * (d + 1)
    for coeff, (a, _) in f_terms:
        fs[a] += coeff
    for coeff, (a, _) in g_terms:
        gs[a] += coeff
    return dynamics.normalize(fs, gs, p), p


def _json_text(obj):
    return json.dumps(obj, sort_keys=True) + "\n"


def _csv_text(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_good_reduction(args, payload, rng):
    fmap, p = _parse_p1_map(payload)
    res = dynamics.sylvester_resultant(fmap.fs, fmap.gs)
    return _json_text({
        "good": dynamics.good_reduction_test(fmap),
        "res_valuation": int(valuation(res, p)),
    })


def _parse_plane_map(payload):
    if _need(payload, "type", str, "a string") != "p2":
        raise SchemaError('field "type" must be "p2"')
    comps = _need(payload, "components", list, "a list of three term lists")
    if len(comps) != 3:
        raise SchemaError("need exactly three components")
    parsed = [_term_list(c, 3, i) for i, c in enumerate(comps)]
    degrees = {sum(e) for terms in parsed for _, e in terms}
    if len(degrees) != 1:
        raise SchemaError("all terms of all components must share one total degree")
    return degree_growth.plane_map_from_exponents(
        [[(coeff, exps) for coeff, exps in terms] for terms in parsed]
    )


def cmd_degseq(args, payload, rng):
    fmap = _parse_plane_map(payload)
    nmax = args.horizon if args.horizon is not None else payload.get("nmax")
    if not isinstance(nmax, int) or nmax < 1:
        raise SchemaError('field "nmax" (or --horizon) must be a positive integer')
    budget = args.budget_bits if args.budget_bits is not None \
        else degree_growth.DEFAULT_BUDGET_BITS
    seq = degree_growth.plane_degree_sequence(fmap, nmax, budget_bits=budget)
    rows = [
        (n, deg, repr(deg ** (1.0 / n)))
        for n, deg in enumerate(seq.degrees, start=1)
    ]
    return _csv_text(["n", "degree", "lambda_estimate"], rows)


def cmd_dyndeg(args, payload, rng):
    if _need(payload, "type", str, "a string") != "monomial":
        raise SchemaError('field "type" must be "monomial"')
    matrix = _need(payload, "matrix", list, "a square integer matrix")
    if not matrix or any(
        not isinstance(row, list)
        or any(isinstance(x, bool) or not isinstance(x, int) for x in row)
        for row in matrix
    ):
        raise SchemaError('field "matrix" must be a square integer matrix')
    width = Fraction(1, 10 ** 9)
    if "width" in payload:
        width = parse_rational(_need(payload, "width", str, "an exact rational string"))
        if width <= 0:
            raise SchemaError('field "width" must be positive')
    mono = degree_growth.MonomialMap(matrix)
    result = degree_growth.monomial_dynamical_degrees(mono, width)
    return _json_text({
        "values": result.values,
        "brackets": [
            [format_rational(lo), format_rational(hi)]
            for lo, hi in result.brackets
        ],
    })


def _affine_polynomial(fmap):
    """The normalized pair as an affine polynomial, or a schema error."""
    gs = [c for c in fmap.gs if c != 0]
    if len(gs) != 1 or fmap.gs[0] == 0:
        raise SchemaError(
            "entropy-sample needs a polynomial map (denominator W^d only)"
        )
    return [Fraction(c, fmap.gs[0]) for c in fmap.fs]


def _prefix_secant(sizes):
    if len(sizes) < 2:
        return 0.0
    logs = [log(s) for s in sizes]
    return max(
        (logs[b] - logs[a]) / (b - a)
        for a in range(len(logs))
        for b in range(a + 1, len(logs))
    )


def cmd_entropy_sample(args, payload, rng):
    p = _need(payload, "p", int, "an integer prime")
    eps = parse_pvalue(_need(payload, "eps", str, 'a p-power string like "p^-1"'))
    horizon = args.horizon if args.horizon is not None else payload.get("horizon")
    if not isinstance(horizon, int) or horizon < 1:
        raise SchemaError('field "horizon" (or --horizon) must be a positive integer')
    spec = _need(payload, "sample", dict, "a sample object")
    kind = _need(spec, "kind", str, "a sample kind string")

    if kind == "preimage-tree":
        c = parse_rational(_need(spec, "c", str, "an exact rational string"))
        target = parse_rational(str(spec.get("target", "0")))
        depth = _need(spec, "depth", int, "a positive integer")
        if depth < 1:
            raise SchemaError('field "depth" must be a positive integer')
        precision = spec.get("precision", 40)
        if not isinstance(precision, int) or precision < 1:
            raise SchemaError('field "precision" must be a positive integer')
        scale = parse_rational(str(spec.get("scale", "1")))
        table, ent, _leaves = entropy.quadratic_tree_orbit_table(
            c, target, depth, precision, p, eps, scale
        )
    else:
        fmap, map_p = _parse_p1_map(_need(payload, "map", dict, "a map object"))
        if map_p != p:
            raise SchemaError("map prime and top-level prime disagree")
        coeffs = _affine_polynomial(fmap)
        if kind == "points":
            raw = _need(spec, "centers", list, "a list of rational strings")
            centers = [parse_rational(str(c)) for c in raw]
        elif kind == "random-integers":
            count = args.sample if args.sample is not None else spec.get("count")
            if not isinstance(count, int) or count < 1:
                raise SchemaError('field "count" (or --sample) must be positive')
            exponent = -Fraction(eps.exp)
            modulus = p ** (floor(exponent) + 1)
            centers = [rng.randrange(modulus) for _ in range(count)]
        else:
            raise SchemaError(f"unknown sample kind {kind!r}")
        table, ent = entropy.polynomial_orbit_table(coeffs, p, centers, eps, horizon)

    rows = []
    sizes = []
    for n in range(1, min(horizon, table.horizon + 1) + 1):
        _, s_tilde = entropy.separated_set(table, n, ent)
        r_tilde = entropy.covering_number(table, n, ent)
        sizes.append(s_tilde)
        rows.append((n, s_tilde, r_tilde, repr(_prefix_secant(sizes))))
    return _csv_text(["n", "S_tilde", "R_tilde", "rate"], rows)


def cmd_eps_reduce(args, payload, rng):
    p = _need(payload, "p", int, "an integer prime")
    eps = parse_pvalue(_need(payload, "eps", str, 'a p-power string like "p^-1"'))
    raw_points = _need(payload, "points", list, "a list of disk point objects")
    points = [berkovich.from_json(obj, p) for obj in raw_points]
    classes = reduction.partition_by_eps(points, eps)
    return _json_text([[berkovich.to_json(x) for x in cls] for cls in classes])


def _build_ring(spec):
    kind = _need(spec, "kind", str, "a ring kind string")
    if kind == "zmod":
        return noetherian.ZMod(_need(spec, "m", int, "an integer >= 2"))
    if kind == "truncated-poly":
        return noetherian.TruncatedPolyRing(
            _need(spec, "p", int, "a prime"),
            _need(spec, "k", int, "a positive integer"),
        )
    if kind == "product":
        factors = _need(spec, "factors", list, "a list of two ring objects")
        if len(factors) != 2:
            raise SchemaError("product rings take exactly two factors")
        return noetherian.ProductRing(_build_ring(factors[0]), _build_ring(factors[1]))
    raise SchemaError(f"unknown ring kind {kind!r}")


def _noetherian_system(payload):
    if "ring" in payload:
        ring = _build_ring(_need(payload, "ring", dict, "a ring object"))
        endo = _need(payload, "endomorphism", dict, "an endomorphism object")
        kind = _need(endo, "kind", str, "an endomorphism kind string")
        if kind == "identity":
            phi = noetherian.identity_map(ring)
        elif kind == "power":
            phi = noetherian.power_map(ring, _need(endo, "q", int, "an integer >= 1"))
        else:
            raise SchemaError(f"unknown endomorphism kind {kind!r}")
        lattice = noetherian.enumerate_ideals(ring)
        fmap = noetherian.induced_ideal_map(ring, phi, lattice)
        poset = lattice.as_poset(reverse=True)
        cover = poset.principal_up_cover()
        return poset, fmap, cover
    if "poset" in payload:
        spec = _need(payload, "poset", dict, "a poset object")
        elements = _need(spec, "elements", list, "a list of element names")
        relation = _need(spec, "relation", list, "a list of [a, b] pairs")
        pairs = []
        for item in relation:
            if not isinstance(item, list) or len(item) != 2:
                raise SchemaError(f"relation entry {item!r} must be [a, b]")
            pairs.append(tuple(item))
        poset = noetherian.FinitePoset(elements, pairs)
        fmap = _need(payload, "map", dict, "an element map object")
        cover_raw = _need(payload, "cover", list, "a list of element lists")
        cover = [frozenset(member) for member in cover_raw]
        return poset, fmap, cover
    raise SchemaError('need either a "ring" or a "poset" system')


def cmd_noetherian(args, payload, rng):
    poset, fmap, cover = _noetherian_system(payload)
    eps = parse_rational(_need(payload, "epsilon", str, "an exact rational string"))
    horizon = args.horizon if args.horizon is not None else payload.get("horizon", 12)
    if not isinstance(horizon, int) or horizon < 3:
        raise SchemaError('field "horizon" (or --horizon) must be an integer >= 3')
    cert = noetherian.recurrence_certificate(poset, fmap, cover, eps, horizon)
    return _json_text({
        "eps": format_rational(cert.eps),
        "Ms": list(cert.Ms),
        "Ns": list(cert.Ns),
        "values": list(cert.values),
        "chain": [sorted(h, key=repr) for h in cert.chain],
        "horizon": cert.horizon,
        "start": cert.start,
        "C": format_rational(cert.C),
        "ok": cert.ok,
        "note": cert.note,
    })


def cmd_keylemma(args, payload, rng):
    d1 = _need(payload, "d1", int, "a positive integer")
    d2 = _need(payload, "d2", int, "a positive integer")
    eps = parse_rational(_need(payload, "eps", str, "an exact rational string"))
    nmax = args.horizon if args.horizon is not None else payload.get("nmax")
    if not isinstance(nmax, int) or nmax < 1:
        raise SchemaError('field "nmax" (or --horizon) must be a positive integer')
    report = degree_growth.key_lemma_check(d1, d2, eps, nmax)
    rows = [
        (n, degree_growth.product_map_volume(d1, d2, n), format_rational(c))
        for n, c in enumerate(report.values, start=1)
    ]
    return _csv_text(["n", "volume", "C"], rows)


_COMMANDS = {
    "good-reduction": cmd_good_reduction,
    "degseq": cmd_degseq,
    "dyndeg": cmd_dyndeg,
    "entropy-sample": cmd_entropy_sample,
    "eps-reduce": cmd_eps_reduce,
    "noetherian": cmd_noetherian,
    "keylemma": cmd_keylemma,
}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON path (default: stdin)")
    common.add_argument("--output", help="output path (default: stdout)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized sampling (default 0)")
    common.add_argument("--budget-bits", type=int, default=None,
                        help="symbolic coefficient bit budget")
    common.add_argument("--horizon", type=int, default=None,
                        help="iteration horizon; overrides the input field")
    common.add_argument("--sample", type=int, default=None,
                        help="sample size; overrides the input field")
    parser = argparse.ArgumentParser(
        prog="padicdyn",
        description="exact non-archimedean dynamics toolkit, batch runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    rng = random.Random(args.seed)
    try:
        payload = _load_payload(args.input)
        text = _COMMANDS[args.command](args, payload, rng)
    except (SchemaError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ToolkitError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
