"""Deadlock detection: static dead squares plus the 2x2 freeze rule.

Both tiers are sound, so a state they flag can never be solved.
"""
from __future__ import annotations

from collections import deque

from .geometry import DIRECTIONS, Position
from .levels import Grid


def compute_dead_squares(grid: Grid) -> frozenset[Position]:
    """Floor cells from which a lone box can never reach a goal.

    Works backwards from every goal: a box on ``p`` can be pulled to a
    neighbour ``q`` when both ``q`` and the cell beyond it are floor.
    """
    floor = grid.floor
    live = set(grid.goals)
    queue = deque(grid.goals)
    while queue:
        p = queue.popleft()
        for d in DIRECTIONS:
            q = d.step(p)
            if q in floor and q not in live and d.step(q) in floor:
                live.add(q)
                queue.append(q)
    return frozenset(floor - live)


def _frozen_block(grid: Grid, boxes, top: int, left: int) -> bool:
    off_goal = False
    for p in ((top, left), (top, left + 1), (top + 1, left), (top + 1, left + 1)):
        if p in boxes:
            if p not in grid.goals:
                off_goal = True
        elif p in grid.floor:
            return False
    return off_goal


def is_deadlocked(state, grid: Grid, dead: frozenset[Position] | None = None) -> bool:
    if dead is None:
        dead = grid.dead_squares
    boxes = state.boxes
    goals = grid.goals
    for b in boxes:
        if b in goals:
            continue
        if b in dead:
            return True
        r, c = b
        # the four 2x2 blocks containing this box
        for top, left in ((r - 1, c - 1), (r - 1, c), (r, c - 1), (r, c)):
            if _frozen_block(grid, boxes, top, left):
                return True
    return False
