"""Calculus of generic orthotopes.

Local theory: series-parallel diagrams and floral arrangements of
half-spaces (spd, arrangement).  Global theory: integral orthogonal
polytopes with exact volume, Euler characteristic, vertex census and face
structure (lattice), plus perturbation of degenerate inputs and random
generation (genericize).
"""

from .arrangement import (
    DEGENERATE,
    Cylinder,
    FloralVertex,
    OrthantSet,
    SetOp,
    combine,
    edge_cross_section,
    edge_direction,
    facet,
    orthant_counts,
    orthants_of,
    recognize,
    residual_cross_section,
)
from .genericize import (
    PadSchedule,
    distance_to_faces,
    face_box,
    hausdorff_distance,
    random_generic,
    thicken,
)
from .lattice import (
    ConsistencyError,
    EulerMethod,
    Face,
    FacePoset,
    Genericity,
    IntegralOrthotope,
    NotGenericError,
    PointClass,
    SkeletonGraph,
    VertexCensus,
    VolumeMethod,
    check_generic,
    classify_point,
    cross_section,
    euler,
    face_poset,
    from_boxes,
    from_cells,
    set_ops,
    sigma_sum,
    skeleton,
    vertex_census,
    vertices,
    volume,
)
from .spd import (
    EMPTY,
    FULL,
    TRIVIAL,
    EdgeKind,
    Leaf,
    Parallel,
    ParseError,
    Series,
    SignedSpd,
    bouquet,
    canonical_form,
    canonical_key,
    delete_edge,
    dual,
    edge_count,
    edge_kind,
    enumerate_shapes,
    format_expr,
    mu,
    parse_expr,
    residual_diagram,
    tau,
    vertex_count,
)

__all__ = [
    "DEGENERATE",
    "EMPTY",
    "FULL",
    "TRIVIAL",
    "ConsistencyError",
    "Cylinder",
    "EdgeKind",
    "EulerMethod",
    "Face",
    "FacePoset",
    "FloralVertex",
    "Genericity",
    "IntegralOrthotope",
    "Leaf",
    "NotGenericError",
    "OrthantSet",
    "PadSchedule",
    "Parallel",
    "ParseError",
    "PointClass",
    "Series",
    "SetOp",
    "SignedSpd",
    "SkeletonGraph",
    "VertexCensus",
    "VolumeMethod",
    "bouquet",
    "canonical_form",
    "canonical_key",
    "check_generic",
    "classify_point",
    "combine",
    "cross_section",
    "delete_edge",
    "distance_to_faces",
    "dual",
    "edge_count",
    "edge_cross_section",
    "edge_direction",
    "edge_kind",
    "enumerate_shapes",
    "euler",
    "face_box",
    "face_poset",
    "facet",
    "format_expr",
    "from_boxes",
    "from_cells",
    "hausdorff_distance",
    "mu",
    "orthant_counts",
    "orthants_of",
    "parse_expr",
    "random_generic",
    "recognize",
    "residual_cross_section",
    "set_ops",
    "sigma_sum",
    "skeleton",
    "tau",
    "thicken",
    "vertex_census",
    "vertex_count",
    "vertices",
    "volume",
]
