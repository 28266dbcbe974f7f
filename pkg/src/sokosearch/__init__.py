"""Sokoban search engines, heuristics, pruning, benchmarking and dataset generation."""
from .geometry import DIRECTIONS, Direction, Move, Position, Symmetry
from .levels import Grid, Level, load_level, load_levels, parse_level, serialize_level, transform_level, transform_move
from .state import IllegalMove, State, apply_move, is_goal, legal_moves, render, replay, state_key
from .deadlock import compute_dead_squares, is_deadlocked
from .heuristics import HeuristicKind, Metric, greedy_heuristic, hungarian_heuristic, metric_distance, solve_assignment
from .search import (
    CF1,
    CF2,
    UNIT,
    CostModel,
    PruneConfig,
    SearchLimits,
    SearchOutcome,
    Status,
    detect_tunnels,
    macro_extend,
    solve,
    solve_astar,
    solve_backtracking,
    solve_bfs,
    solve_dfs,
    solve_dfs_id,
    solve_ucs,
)
from .corpus import load_corpus

__version__ = "0.1.0"
