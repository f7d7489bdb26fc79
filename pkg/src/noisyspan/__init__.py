"""Finding and verifying spanning trees with noisy edge-existence queries."""

from .algorithms import (
    SpanningTree,
    VerifyParams,
    VerifyVerdict,
    combined_fn,
    combined_fp,
    discover,
    expected_hitting_time_bound,
    hitting_probability,
    naive_fn,
    naive_fp,
    naive_two_sided,
    solve_planar_fp,
    solve_sparse_fn,
    threshold_and_budget,
    verify_tree,
)
from .graph import (
    DualGraph,
    MoldGraph,
    PlanarEmbedding,
    Realization,
    build_dual,
    contract,
    is_spanning_tree,
    min_degree_vertex,
    neighborhood,
    sparsity,
    trace_faces,
)
from .oracle import ErrorModel, NoiseModel, NoisyOracle, invert, query_stats

__version__ = "0.1.0"
