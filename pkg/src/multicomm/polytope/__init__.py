"""Exact rational polyhedral kernel: representations, LP, conversions, projection, openness."""

from .convert import extreme_rays, hull, image_polytope, irredundant_points, vertex_enumeration
from .linalg import format_fraction, frac
from .lp import (
    LPResult,
    contains_polytope,
    in_convex_hull,
    is_bounded,
    is_empty,
    lp_feasible,
    lp_maximize,
    lp_optimize,
    same_set,
)
from .openness import (
    DEFAULT_FACE_BUDGET,
    FaceCertificate,
    OpennessVerdict,
    SampledOpenness,
    affine_map_is_open,
    enumerate_faces,
    sampled_metric_openness,
    tangent_cone,
)
from .projection import fm_project, remove_redundant
from .sets import AffineMap, FeasibilityCertificate, HPolytope, PolyhedralCone, VPolytope

__all__ = [
    "AffineMap",
    "DEFAULT_FACE_BUDGET",
    "FaceCertificate",
    "FeasibilityCertificate",
    "HPolytope",
    "LPResult",
    "OpennessVerdict",
    "PolyhedralCone",
    "SampledOpenness",
    "VPolytope",
    "affine_map_is_open",
    "contains_polytope",
    "enumerate_faces",
    "extreme_rays",
    "fm_project",
    "format_fraction",
    "frac",
    "hull",
    "image_polytope",
    "in_convex_hull",
    "irredundant_points",
    "is_bounded",
    "is_empty",
    "lp_feasible",
    "lp_maximize",
    "lp_optimize",
    "remove_redundant",
    "same_set",
    "sampled_metric_openness",
    "tangent_cone",
    "vertex_enumeration",
]
