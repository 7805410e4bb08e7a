"""Walk combinatorics: constrained path sets, walk graphs, reductions and exact
trace-moment oracles."""
from .fixtures import available_fixtures, load_fixture, parse_fixture
from .moments import (
    MomentEnvelope,
    MomentTarget,
    class_moment,
    class_moment_bound,
    coerce,
    ell_cap,
    exact_trace_moment,
    moment_envelope,
    path_sum_moment,
    proof_ell,
)
from .multigraph import MultiGraph, build_walk_graph, from_edges, genus
from .paths import (
    Walk,
    WalkMode,
    WalkPair,
    WalkPath,
    crossing_counts,
    enumerate_c0,
    enumerate_paths,
    in_c,
    in_c_tilde,
    is_normal,
    iter_paths,
    normalize_path,
    vertex_count,
    walk_signature,
)
from .reduction import (
    ReducedPath,
    ReducedTriple,
    ReductionReport,
    SweepReport,
    edge_label,
    expand_triple,
    reduce_path,
    reduction_summary,
    sweep_reductions,
    verify_reduction,
)
from .sampling import PathSample, sample_c0_paths

__all__ = [
    "available_fixtures",
    "load_fixture",
    "parse_fixture",
    "MomentEnvelope",
    "MomentTarget",
    "class_moment",
    "class_moment_bound",
    "coerce",
    "ell_cap",
    "exact_trace_moment",
    "moment_envelope",
    "path_sum_moment",
    "proof_ell",
    "MultiGraph",
    "build_walk_graph",
    "from_edges",
    "genus",
    "Walk",
    "WalkMode",
    "WalkPair",
    "WalkPath",
    "crossing_counts",
    "enumerate_c0",
    "enumerate_paths",
    "in_c",
    "in_c_tilde",
    "is_normal",
    "iter_paths",
    "normalize_path",
    "vertex_count",
    "walk_signature",
    "ReducedPath",
    "ReducedTriple",
    "ReductionReport",
    "SweepReport",
    "edge_label",
    "expand_triple",
    "reduce_path",
    "reduction_summary",
    "sweep_reductions",
    "verify_reduction",
    "PathSample",
    "sample_c0_paths",
]
