"""Exact toolkit for dynamics over the p-adic rationals.

Everything is exact: absolute values are symbolic powers of p, points are
centers and radii over Q, growth rates come with certified brackets, and
the only floats are final human-facing estimates.
"""

from .berkovich import (
    DiskPoint,
    classical_point,
    from_json,
    gauss_norm,
    gauss_point,
    point_eq,
    point_leq,
    to_json,
)
from .dynamics import (
    RationalMapP1,
    compose,
    good_reduction_test,
    image_disk,
    iterate,
    normalize,
    preimage_tree,
    rational_eval,
    reduced_degree,
    sylvester_resultant,
)
from .degree_growth import (
    MonomialMap,
    PlaneMap,
    compose_plane,
    key_lemma_check,
    monomial_dynamical_degrees,
    normalize_plane,
    plane_degree_sequence,
    plane_map_from_exponents,
    product_map_volume,
    siu_surface_check,
)
from .entropy import (
    Entourage,
    OrbitTable,
    admissible_mask,
    chain_inequality_check,
    covering_number,
    entourage_from_partition,
    entropy_rate,
    plane_orbit_table,
    polynomial_orbit_table,
    quadratic_tree_orbit_table,
    separated_set,
)
from .errors import BudgetError, ToolkitError
from .field import (
    PValue,
    format_pvalue,
    format_rational,
    hensel_sqrt,
    newton_root_radii,
    norm,
    parse_pvalue,
    parse_rational,
    valuation,
)
from .noetherian import (
    FinitePoset,
    IdealLattice,
    ProductRing,
    TruncatedPolyRing,
    ZMod,
    cover_complexity,
    cycle_measures,
    enumerate_ideals,
    induced_ideal_map,
    invariant_kernel_dimension,
    periodic_cycles,
    priestley_check,
    recurrence_certificate,
)
from .reduction import (
    eps_reduce_equal,
    ideal_member,
    partition_by_eps,
    primary_witness,
    red_classical,
)

__all__ = [
    "BudgetError",
    "DiskPoint",
    "Entourage",
    "FinitePoset",
    "IdealLattice",
    "MonomialMap",
    "OrbitTable",
    "PValue",
    "PlaneMap",
    "ProductRing",
    "RationalMapP1",
    "ToolkitError",
    "TruncatedPolyRing",
    "ZMod",
    "admissible_mask",
    "chain_inequality_check",
    "classical_point",
    "compose",
    "compose_plane",
    "cover_complexity",
    "covering_number",
    "cycle_measures",
    "enumerate_ideals",
    "entourage_from_partition",
    "entropy_rate",
    "eps_reduce_equal",
    "format_pvalue",
    "format_rational",
    "from_json",
    "gauss_norm",
    "gauss_point",
    "good_reduction_test",
    "hensel_sqrt",
    "ideal_member",
    "image_disk",
    "induced_ideal_map",
    "invariant_kernel_dimension",
    "iterate",
    "key_lemma_check",
    "monomial_dynamical_degrees",
    "newton_root_radii",
    "norm",
    "normalize",
    "normalize_plane",
    "parse_pvalue",
    "parse_rational",
    "partition_by_eps",
    "periodic_cycles",
    "plane_degree_sequence",
    "plane_map_from_exponents",
    "plane_orbit_table",
    "point_eq",
    "point_leq",
    "polynomial_orbit_table",
    "preimage_tree",
    "priestley_check",
    "primary_witness",
    "product_map_volume",
    "quadratic_tree_orbit_table",
    "rational_eval",
    "recurrence_certificate",
    "red_classical",
    "reduced_degree",
    "separated_set",
    "siu_surface_check",
    "sylvester_resultant",
    "to_json",
    "valuation",
]
