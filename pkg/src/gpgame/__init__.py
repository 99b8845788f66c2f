"""Exact solver for the Builder-Blocker general position game on small graphs."""

from .graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    GraphFormatError,
    VertexSet,
    all_pairs_distances,
    basic_invariants,
    build_graph,
    format_graph,
    parse_graph,
    read_graph,
    write_graph,
)
from .position import (
    closure_size,
    geodesic_blockers,
    is_general_position,
    line,
    side_partition,
)
from .solver import (
    GameOutcome,
    GameSolver,
    GameState,
    Player,
    SearchBudgetExceeded,
    game_values,
    gp_lower_number,
    gp_number,
    oracle_solve,
    solve_game,
)

__version__ = "0.1.0"

__all__ = [
    "DistanceMatrix", "Graph", "GraphError", "GraphFormatError", "VertexSet",
    "all_pairs_distances", "basic_invariants", "build_graph", "format_graph",
    "parse_graph", "read_graph", "write_graph",
    "closure_size", "geodesic_blockers", "is_general_position", "line", "side_partition",
    "GameOutcome", "GameSolver", "GameState", "Player", "SearchBudgetExceeded",
    "game_values", "gp_lower_number", "gp_number", "oracle_solve", "solve_game",
]
