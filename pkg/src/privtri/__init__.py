"""Two-server secure triangle counting with distributed differential privacy."""

from .baselines import CentralResult, central_lap
from .graph import EdgeListFormatError, Graph, exact_triangle_count, load_edge_list
from .harness import (
    ExperimentConfig,
    TrialRecord,
    emit_csv,
    run,
    run_cargo,
    run_central,
    run_exact,
    run_project_compare,
    summarize,
)
from .perturbation import NoiseParams, PartialNoise, partial_noise, perturb, sample_gamma
from .projection import (
    NoisyDegrees,
    ProjectedGraph,
    degree_similarity,
    effective_theta,
    max_private,
    project,
    project_random,
)
from .ring import (
    DealerRng,
    MGReuseError,
    MultiplicationGroup,
    OpeningChannel,
    SharePair,
    add_local,
    deal_mg,
    mg_from_values,
    mul3,
    reconstruct,
    share,
)
from .secure_count import (
    ServerState,
    SharedAdjacency,
    count,
    effective_bits,
    effective_graph,
    share_adjacency,
)

__all__ = [
    "CentralResult",
    "DealerRng",
    "EdgeListFormatError",
    "ExperimentConfig",
    "Graph",
    "MGReuseError",
    "MultiplicationGroup",
    "NoiseParams",
    "NoisyDegrees",
    "OpeningChannel",
    "PartialNoise",
    "ProjectedGraph",
    "ServerState",
    "SharePair",
    "SharedAdjacency",
    "TrialRecord",
    "add_local",
    "central_lap",
    "count",
    "deal_mg",
    "degree_similarity",
    "effective_bits",
    "effective_graph",
    "effective_theta",
    "emit_csv",
    "exact_triangle_count",
    "load_edge_list",
    "max_private",
    "mg_from_values",
    "mul3",
    "partial_noise",
    "perturb",
    "project",
    "project_random",
    "reconstruct",
    "run",
    "run_cargo",
    "run_central",
    "run_exact",
    "run_project_compare",
    "sample_gamma",
    "share",
    "share_adjacency",
    "summarize",
]
