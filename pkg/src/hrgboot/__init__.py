"""Bootstrap percolation on random hyperbolic graphs.

Sampling of the N-vertex hyperbolic random graph, bond percolation,
threshold-r bootstrap spreading, and the band/block decomposition that
explains why sub-polynomial seed sets take over the graph.
"""

from .bands import (
    BandCensus,
    BandDecomposition,
    BlockDiagnostics,
    ErrorTermReport,
    band_census,
    black_block_diagnostics,
    compute_C,
    error_term_report,
    solve_band_recurrence,
)
from .errors import DecompositionError, GraphFileError, ParameterError
from .geometry import ModelParams, PolarPoint, hyperbolic_distance
from .graph import (
    Graph,
    Vertex,
    bond_percolate,
    build_graph,
    connected_components,
    largest_component_size,
    load_graph,
    save_graph,
)
from .kernels import BACKEND
from .percolation import (
    BootstrapResult,
    CoreResult,
    PercolationConfig,
    bootstrap,
    check_fixed_point,
    initial_infection,
    naive_bootstrap,
    r_core,
    run_experiment,
)
from .stats import degree_ccdf, degree_histogram, hill_estimator, mean_clustering

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BandCensus",
    "BandDecomposition",
    "BlockDiagnostics",
    "BootstrapResult",
    "CoreResult",
    "DecompositionError",
    "ErrorTermReport",
    "Graph",
    "GraphFileError",
    "ModelParams",
    "ParameterError",
    "PercolationConfig",
    "PolarPoint",
    "Vertex",
    "band_census",
    "black_block_diagnostics",
    "bond_percolate",
    "bootstrap",
    "build_graph",
    "check_fixed_point",
    "compute_C",
    "connected_components",
    "degree_ccdf",
    "degree_histogram",
    "error_term_report",
    "hill_estimator",
    "hyperbolic_distance",
    "initial_infection",
    "largest_component_size",
    "load_graph",
    "mean_clustering",
    "naive_bootstrap",
    "r_core",
    "run_experiment",
    "save_graph",
    "solve_band_recurrence",
    "__version__",
]
