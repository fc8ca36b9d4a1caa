"""Duplication-deletion random graphs: simulation, coupling and the limiting degree law."""

from .adjacency import AdjacencyGraph
from .coupling import CoupledState, Diagnostics
from .partition import CliquePartition, ContractViolation, InvariantError
from .runner import growth_diagnostics, run, run_coupled
from .stats import (DegreeHistogram, clustering_average, clustering_global, degree_histogram,
                    triangle_count)
from .stream import ChoiceStream
from .theory import (cd_asymptotic, cd_from_yk, cd_quadrature, fixed_point_yk,
                     normalization_check, peak_location, yk_from_cd)

__all__ = [
    "AdjacencyGraph", "ChoiceStream", "CliquePartition", "ContractViolation", "CoupledState",
    "DegreeHistogram", "Diagnostics", "InvariantError", "cd_asymptotic", "cd_from_yk",
    "cd_quadrature", "clustering_average", "clustering_global", "degree_histogram",
    "fixed_point_yk", "growth_diagnostics", "normalization_check", "peak_location", "run",
    "run_coupled", "triangle_count", "yk_from_cd",
]
