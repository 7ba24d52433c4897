"""curvkit: curvature lower-bound certification for finite metric spaces.

The toolkit validates distance matrices, evaluates comparison angles and
the associated quadratic forms against a model space of constant
curvature, certifies the quadruple comparison condition by exhaustive
sweep, detects equality (rigidity) configurations and realizes them
isometrically, and ships packing-radius and quadrilateral-inequality
utilities plus synthetic generators.
"""

from ._kernels import BACKEND, available_backends
from .applications import (
    GeneratedSpace,
    PackingResult,
    euclidean_sample,
    find_midpoints,
    generate,
    hyperbolic_sample,
    metric_transform,
    packing_bound,
    packing_radius,
    simplex_on_sphere,
    sphere_kernel_embedding,
    sphere_sample,
    star_space,
    tripod,
    villani_gap,
    villani_star,
)
from .certifier import CertReport, certify_kappa, max_kappa, min_quadruple_size
from .comparison import (
    DirectionGram,
    WeightedStar,
    bn_cosq,
    comparison_angle,
    direction_gram,
    kappa_inner_product,
    lss_form,
    quadruple_defect,
    sturm_slack,
)
from .errors import (
    BetweennessError,
    ChartError,
    CurvkitError,
    GramIndefiniteError,
    InvalidTriangleError,
    MetricValidationError,
    NoLowerBoundError,
    NotEqualityCaseError,
    UndefinedAngleError,
)
from .metric_core import (
    DiscreteGeodesic,
    FiniteMetricSpace,
    perimeter_and_size,
    restrict,
    trace_geodesic,
    validate_metric,
)
from .model_space import (
    Kappa,
    ModelConfig,
    distance_matrix,
    exp_from_gram,
    geodesic_point,
    kappa_trig,
    model_distance,
    realize_triangle,
    vertex_angle,
)
from .rigidity import (
    FlatQuadruple,
    StarEmbedding,
    comparison_gap,
    embed_star,
    realize_flat_quadruple,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "available_backends",
    "BetweennessError",
    "CertReport",
    "ChartError",
    "CurvkitError",
    "DirectionGram",
    "DiscreteGeodesic",
    "FiniteMetricSpace",
    "FlatQuadruple",
    "GeneratedSpace",
    "GramIndefiniteError",
    "InvalidTriangleError",
    "Kappa",
    "MetricValidationError",
    "ModelConfig",
    "NoLowerBoundError",
    "NotEqualityCaseError",
    "PackingResult",
    "StarEmbedding",
    "UndefinedAngleError",
    "WeightedStar",
    "bn_cosq",
    "certify_kappa",
    "comparison_angle",
    "comparison_gap",
    "direction_gram",
    "distance_matrix",
    "embed_star",
    "euclidean_sample",
    "exp_from_gram",
    "find_midpoints",
    "generate",
    "geodesic_point",
    "hyperbolic_sample",
    "kappa_inner_product",
    "kappa_trig",
    "lss_form",
    "max_kappa",
    "metric_transform",
    "min_quadruple_size",
    "model_distance",
    "packing_bound",
    "packing_radius",
    "perimeter_and_size",
    "quadruple_defect",
    "realize_flat_quadruple",
    "realize_triangle",
    "restrict",
    "simplex_on_sphere",
    "sphere_kernel_embedding",
    "sphere_sample",
    "star_space",
    "sturm_slack",
    "trace_geodesic",
    "tripod",
    "validate_metric",
    "vertex_angle",
    "villani_gap",
    "villani_star",
]
