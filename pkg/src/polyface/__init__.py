"""Polymatroids, matroids and entropy functions on 2-dimensional faces of the Shannon cone."""

from .classify import (
    ChiOracle,
    FaceReport,
    FaceType,
    Membership,
    chi_membership,
    classify_face,
    region_boundary_data,
    region_membership,
    restricted_pair_type,
)
from .cone import (
    FacetId,
    enumerate_facets,
    is_extreme_ray,
    is_two_face,
    minimal_face_dim,
    modular_or_tight_check,
    slack,
    tight_set,
)
from .entropy import (
    Certificate,
    JointDistribution,
    add_loop,
    certify_point,
    check_face_membership,
    entropy_vector,
    marginal,
    matroid_dist,
    matus_boundary_dist,
    parallel_extend,
    product,
    support_graph_diagnostic,
    uniform_matroid_dist,
)
from .matroid import (
    Matroid,
    UniformSpec,
    catalog,
    circuit_noncontainment_check,
    circuits,
    is_connected_after_loop_deletion,
    loops,
    parallel_pairs,
    rank_from_circuits,
    uniform,
)
from .setfn import (
    EntropyVector,
    RankVector,
    combine,
    evaluate,
    is_integer_minimal,
    is_modular,
    is_polymatroid,
    is_tight,
    mask_of,
    restrict,
)

__version__ = "0.1.0"
