"""clusterkit: connected-component sizes via substochastic matrix inversion.

The headline engine rescales a graph's adjacency matrix until every row
sums below 1, inverts I - W exactly or in floats, and counts nonzero
entries per row; that count is the size of each node's cluster. A boolean
power-sum engine answers the bounded-distance variant, a union-find /
BFS oracle cross-checks everything, and a benchmark harness times the
engines against each other.
"""

from clusterkit.bench import (
    BenchRecord,
    BenchSpec,
    ENGINE_NAMES,
    emit_report,
    records_from_json,
    run_benchmark,
    sizes_checksum,
)
from clusterkit.closure import (
    BACKEND_EXACT,
    BACKEND_FLOAT,
    DEFAULT_NONZERO_THRESHOLD,
    FLOAT_GEOMETRIC_SAFE_K,
    VARIANT_GEOMETRIC,
    VARIANT_UNIFORM,
    VARIANTS,
    ClusterReport,
    FundamentalMatrix,
    RowBound,
    WeightMatrix,
    cluster_size_within_n,
    cluster_sizes_fundamental,
    cluster_sizes_oracle,
    cluster_sizes_power_sum,
    expected_absorption_steps,
    fundamental_matrix,
    neumann_fundamental,
    reflexive_transitive_closure,
    row_sum_bounds,
    substochastic_transform,
)
from clusterkit.graphs import (
    AdjacencyMatrix,
    Graph,
    STRUCTURED_KINDS,
    gen_random_graph,
    gen_structured_graph,
    graph_to_adjacency,
)
from clusterkit.io import parse_edge_list, parse_matrix_market, serialize_edge_list
from clusterkit.linalg import (
    ConvergenceConfig,
    Domain,
    Matrix,
    identity,
    identity_minus,
    mat_mul,
    mat_power,
    neumann_sum,
    power_sum,
    residual_norm,
    solve_inverse,
    sup_norm,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix",
    "BACKEND_EXACT",
    "BACKEND_FLOAT",
    "BenchRecord",
    "BenchSpec",
    "ClusterReport",
    "ConvergenceConfig",
    "DEFAULT_NONZERO_THRESHOLD",
    "Domain",
    "ENGINE_NAMES",
    "FLOAT_GEOMETRIC_SAFE_K",
    "FundamentalMatrix",
    "Graph",
    "Matrix",
    "RowBound",
    "STRUCTURED_KINDS",
    "VARIANTS",
    "VARIANT_GEOMETRIC",
    "VARIANT_UNIFORM",
    "WeightMatrix",
    "cluster_size_within_n",
    "cluster_sizes_fundamental",
    "cluster_sizes_oracle",
    "cluster_sizes_power_sum",
    "emit_report",
    "expected_absorption_steps",
    "fundamental_matrix",
    "gen_random_graph",
    "gen_structured_graph",
    "graph_to_adjacency",
    "identity",
    "identity_minus",
    "mat_mul",
    "mat_power",
    "neumann_fundamental",
    "neumann_sum",
    "parse_edge_list",
    "parse_matrix_market",
    "power_sum",
    "records_from_json",
    "reflexive_transitive_closure",
    "residual_norm",
    "row_sum_bounds",
    "run_benchmark",
    "serialize_edge_list",
    "sizes_checksum",
    "solve_inverse",
    "substochastic_transform",
    "sup_norm",
    "__version__",
]
