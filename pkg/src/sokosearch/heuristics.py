"""Future-cost estimates for A*: greedy and assignment-based box-to-goal distances.

Distances are pure metrics; walls and player reachability are ignored.
"""
from __future__ import annotations

import enum
import math
from typing import Sequence

import numpy as np

from .levels import Grid


class Metric(enum.Enum):
    EUCLID = "euclid"
    MANHATTAN = "manhattan"


class HeuristicKind(enum.Enum):
    GREEDY_EUCLID = "greedy-euclid"
    GREEDY_MANHATTAN = "greedy-manhattan"
    HUNGARIAN_EUCLID = "hungarian-euclid"
    HUNGARIAN_MANHATTAN = "hungarian-manhattan"

    @property
    def metric(self) -> Metric:
        return Metric.MANHATTAN if self.value.endswith("manhattan") else Metric.EUCLID

    @property
    def uses_assignment(self) -> bool:
        return self.value.startswith("hungarian")

    @classmethod
    def parse(cls, name: str) -> HeuristicKind:
        try:
            return cls(name.lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown heuristic {name!r} (choose from {choices})") from None


def metric_distance(a, b, metric: Metric) -> float:
    dr = a[0] - b[0]
    dc = a[1] - b[1]
    if metric is Metric.MANHATTAN:
        return abs(dr) + abs(dc)
    return math.sqrt(dr * dr + dc * dc)


def cost_matrix(boxes, goals, metric: Metric) -> np.ndarray:
    """Rows are boxes, columns are goals, both in row-major order."""
    b = np.array(sorted(boxes), dtype=float).reshape(-1, 2)
    g = np.array(sorted(goals), dtype=float).reshape(-1, 2)
    diff = b[:, None, :] - g[None, :, :]
    if metric is Metric.MANHATTAN:
        return np.abs(diff).sum(axis=2)
    return np.sqrt((diff ** 2).sum(axis=2))


def greedy_heuristic(state, grid: Grid, metric: Metric) -> float:
    goals = grid.goals
    return sum(min(metric_distance(b, g, metric) for g in goals) for b in state.boxes)


def solve_assignment(m: Sequence[Sequence[float]] | np.ndarray) -> tuple[list[int], float]:
    """Minimum-cost perfect matching on a square cost matrix (Kuhn-Munkres, O(n^3)).

    Returns ``(assignment, total)`` where ``assignment[i]`` is the column
    matched to row ``i``. Uses the shortest augmenting path formulation with
    row/column potentials.
    """
    cost = np.asarray(m, dtype=float)
    n = cost.shape[0]
    if cost.ndim != 2 or cost.shape[1] != n:
        raise ValueError(f"cost matrix must be square, got shape {cost.shape}")
    if n == 0:
        return [], 0.0

    inf = math.inf
    # 1-based arrays; index 0 is the virtual root of each augmenting tree
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    match_col = [0] * (n + 1)  # match_col[j] = row matched to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match_col[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match_col[j0]
            delta = inf
            j1 = 0
            row = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match_col[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_col[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match_col[j0] = match_col[j1]
            j0 = j1

    assignment = [0] * n
    for j in range(1, n + 1):
        assignment[match_col[j] - 1] = j - 1
    total = float(sum(cost[i, assignment[i]] for i in range(n)))
    return assignment, total


def hungarian_heuristic(state, grid: Grid, metric: Metric) -> float:
    if state.boxes == grid.goals:
        return 0.0
    _, total = solve_assignment(cost_matrix(state.boxes, grid.goals, metric))
    return total


def evaluate(kind: HeuristicKind, state, grid: Grid) -> float:
    if kind.uses_assignment:
        return hungarian_heuristic(state, grid, kind.metric)
    return greedy_heuristic(state, grid, kind.metric)
