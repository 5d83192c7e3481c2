"""Exact arithmetic and renormalization tools for interval exchange maps.

Everything downstream of the quadratic number type stays exact: orbits,
first-return induction, strip decompositions, Bratteli diagrams, dimension
groups, and invariant-measure estimates all compute over Q(sqrt(d)) with
no floating point in any decision.
"""

from .errors import (
    ClosedTransversalRequired,
    ConsistencyViolation,
    DegenerateAt,
    DepthExceeded,
    HorizonExceedsDepth,
    IetlabError,
    InvalidPermutation,
    MixedRadicand,
    NonPositiveLength,
    NotAdmissible,
    NotVerifiedIDOC,
    OutOfDomain,
    ParseError,
    Reducible,
    ReturnTimeExceeded,
    ShapeViolation,
)
from .exactnum import (
    QuadReal,
    format_quad,
    parse_quad,
    quad,
    quad_approx,
    quad_floor,
    quad_sign,
    radical,
)
from .iet import (
    IdocResult,
    Iet,
    OrbitPoint,
    Permutation,
    idoc_check,
    iet_apply,
    iet_new,
    irreducible,
    orbit,
    orbit_point,
    permutation,
)
from .induction import (
    AdmissibilityResult,
    AdmissibleInterval,
    DEFAULT_MAX_STEPS,
    InductionStep,
    basic_interval,
    first_return_blocks,
    induce,
    is_admissible,
    shrink_sequence,
    whole_interval,
)
from .intmat import column_sums, det, identity, inverse, mat_mul, mat_vec, transpose
from .ktheory import (
    BratteliDiagram,
    BratteliLevel,
    DimensionGroup,
    GroupElement,
    LSigma,
    Tower,
    TowerPartition,
    bratteli,
    coinvariant_shift,
    dimension_group,
    dual_cone_test,
    export_bratteli,
    l_sigma,
    orbit_classes,
    positivity,
    strip_class_matrix,
    strip_coordinates,
    towers,
)
from .measures import (
    Certificate,
    ConeApprox,
    MeasureVector,
    cone_approx,
    empirical_measure,
    nesting_holds,
    unique_ergodicity_certificate,
)
from .render import render_strip_level
from .suspension import (
    Floor,
    Marker,
    SingularityProfile,
    Singularity,
    Strip,
    StripLevel,
    singularity_profile,
    strip_decomposition,
    strip_dimension_group_feed,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityResult",
    "AdmissibleInterval",
    "BratteliDiagram",
    "BratteliLevel",
    "Certificate",
    "ClosedTransversalRequired",
    "ConeApprox",
    "ConsistencyViolation",
    "DEFAULT_MAX_STEPS",
    "DegenerateAt",
    "DepthExceeded",
    "DimensionGroup",
    "Floor",
    "GroupElement",
    "HorizonExceedsDepth",
    "IdocResult",
    "Iet",
    "IetlabError",
    "InductionStep",
    "InvalidPermutation",
    "LSigma",
    "Marker",
    "MeasureVector",
    "MixedRadicand",
    "NonPositiveLength",
    "NotAdmissible",
    "NotVerifiedIDOC",
    "OrbitPoint",
    "OutOfDomain",
    "ParseError",
    "Permutation",
    "QuadReal",
    "Reducible",
    "ReturnTimeExceeded",
    "ShapeViolation",
    "Singularity",
    "SingularityProfile",
    "Strip",
    "StripLevel",
    "Tower",
    "TowerPartition",
    "basic_interval",
    "bratteli",
    "coinvariant_shift",
    "column_sums",
    "cone_approx",
    "det",
    "dimension_group",
    "dual_cone_test",
    "empirical_measure",
    "export_bratteli",
    "first_return_blocks",
    "format_quad",
    "identity",
    "idoc_check",
    "iet_apply",
    "iet_new",
    "induce",
    "inverse",
    "irreducible",
    "is_admissible",
    "l_sigma",
    "mat_mul",
    "mat_vec",
    "nesting_holds",
    "orbit",
    "orbit_classes",
    "orbit_point",
    "parse_quad",
    "permutation",
    "positivity",
    "quad",
    "quad_approx",
    "quad_floor",
    "quad_sign",
    "radical",
    "render_strip_level",
    "shrink_sequence",
    "singularity_profile",
    "strip_class_matrix",
    "strip_coordinates",
    "strip_decomposition",
    "strip_dimension_group_feed",
    "towers",
    "transpose",
    "unique_ergodicity_certificate",
    "whole_interval",
]
