"""Dense node sets that persist across the snapshots of a graph history."""

from .density import AggregateKind, DensityKind, aggregate_density, density, density_on_average_graph
from .graph_model import (
    AverageGraph,
    EmptyHistoryError,
    EmptySetError,
    GraphHistory,
    ParseError,
    Snapshot,
    build_average_graph,
    dump_history,
    induced_subhistory,
    load_history,
    load_history_file,
)
from .o2bff import InitKind, O2Solution, best_snapshots, solve_o2bff
from .oracle import BudgetError, OracleBudget, brute_force_bff, brute_force_o2bff, dcs_baseline
from .peeling import DegreeBuckets, Scorer, Solution, find_bff, find_bff_query, restrict_to_component
from .synthetic import InstanceSpec, PlantSpec, generate_history

__all__ = [
    "AggregateKind", "AverageGraph", "BudgetError", "DegreeBuckets", "DensityKind", "EmptyHistoryError",
    "EmptySetError", "GraphHistory", "InitKind", "InstanceSpec", "O2Solution", "OracleBudget", "ParseError",
    "PlantSpec", "Scorer", "Snapshot", "Solution", "aggregate_density", "best_snapshots", "brute_force_bff",
    "brute_force_o2bff", "build_average_graph", "dcs_baseline", "density", "density_on_average_graph",
    "dump_history", "find_bff", "find_bff_query", "generate_history", "induced_subhistory", "load_history",
    "load_history_file", "restrict_to_component", "solve_o2bff",
]
