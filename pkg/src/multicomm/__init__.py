"""Limits of finite diagrams, the probability functor, and the characteristic map chi.

Everything is exact: weights and polytope data are Fractions, and any floating
point result (HiGHS hints, sampled openness) is advisory only.
"""

from .chi import (
    ChiMap,
    build_chi,
    check_chi_affine,
    check_chi_open,
    check_chi_surjective,
    check_functor_preserves,
    chi_apply,
    codomain_polytope,
    preimage_witness,
    verify_composition_identity,
)
from .diagram import (
    Cone,
    Diagram,
    FiniteSpace,
    Poset,
    SpaceMap,
    check_bicommutative,
    check_cone,
    check_cone_open_multicommutative,
    compute_limit,
    cone_characteristic_map,
    diagram_from_data,
    limit_cone,
    limit_embedding,
    projection,
    pullback_square,
    validate_diagram,
    validate_poset,
)
from .errors import MulticommError
from .glue import (
    DiagramClass,
    DiagramMorphism,
    Method,
    classify_diagram,
    gamma_partition,
    glue_family,
    lift_diagram_morphism,
    validate_morphism,
)
from .measures import (
    MarginalFamily,
    Measure,
    check_consistent_family,
    gluing_coupling,
    graph_pushforward,
    make_family,
    marginal,
    mix,
    product_measure,
    pushforward,
)

__version__ = "0.1.0"

__all__ = [
    "ChiMap",
    "Cone",
    "Diagram",
    "DiagramClass",
    "DiagramMorphism",
    "FiniteSpace",
    "MarginalFamily",
    "Measure",
    "Method",
    "MulticommError",
    "Poset",
    "SpaceMap",
    "build_chi",
    "check_bicommutative",
    "check_chi_affine",
    "check_chi_open",
    "check_chi_surjective",
    "check_cone",
    "check_cone_open_multicommutative",
    "check_consistent_family",
    "check_functor_preserves",
    "chi_apply",
    "classify_diagram",
    "codomain_polytope",
    "compute_limit",
    "cone_characteristic_map",
    "diagram_from_data",
    "gamma_partition",
    "glue_family",
    "gluing_coupling",
    "graph_pushforward",
    "lift_diagram_morphism",
    "limit_cone",
    "limit_embedding",
    "make_family",
    "marginal",
    "mix",
    "preimage_witness",
    "product_measure",
    "projection",
    "pullback_square",
    "pushforward",
    "validate_diagram",
    "validate_morphism",
    "validate_poset",
    "verify_composition_identity",
]
