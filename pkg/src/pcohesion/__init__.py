"""Critical-connection regions via minimal p-cohesions, and private
k-clique count release through a two-phase decentralized mechanism."""

from .cohesion import (
    CohesionParams,
    CohesionResult,
    ScoreBreakdown,
    brute_force_minimal,
    elv,
    expand,
    is_valid_cohesion,
    merit,
    minimal_p_cohesion,
    penalty,
    score_breakdown,
    shrink,
)
from .counting import (
    CliqueCounts,
    count_cliques_at,
    max_common_neighbors_in,
    split_counts,
    total_count_report,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    RegionStats,
    extract_regions,
    run_experiment,
    stats_report,
    sweep,
)
from .graph import (
    EdgeListFormatError,
    Graph,
    InducedSubgraph,
    degree,
    density,
    induced,
    load_edge_list,
    two_hop_neighborhood,
    write_edge_list,
)
from .privacy import (
    BudgetReport,
    LaplaceStreams,
    PerturbedResponse,
    Phase1Outcome,
    PrivacyParams,
    SequenceNoise,
    ZeroNoise,
    budget_check,
    lambda_for_k4,
    laplace_noise,
    phase1,
    phase2,
)

__version__ = "0.1.0"

__all__ = [
    "Graph", "InducedSubgraph", "EdgeListFormatError",
    "load_edge_list", "write_edge_list", "degree", "induced", "density",
    "two_hop_neighborhood",
    "CohesionParams", "CohesionResult", "ScoreBreakdown",
    "merit", "penalty", "score_breakdown", "expand", "shrink",
    "minimal_p_cohesion", "elv", "brute_force_minimal", "is_valid_cohesion",
    "CliqueCounts", "count_cliques_at", "split_counts",
    "max_common_neighbors_in", "total_count_report",
    "PrivacyParams", "BudgetReport", "Phase1Outcome", "PerturbedResponse",
    "LaplaceStreams", "ZeroNoise", "SequenceNoise",
    "laplace_noise", "phase1", "phase2", "lambda_for_k4", "budget_check",
    "ExperimentConfig", "ExperimentResult", "RegionStats",
    "extract_regions", "run_experiment", "sweep", "stats_report",
    "__version__",
]
