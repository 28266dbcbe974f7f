"""Dynamic game state: legal move generation, successors, goal test."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .geometry import DIRECTIONS, Direction, Move, Position, text_to_directions
from .levels import Grid, Level, render_cells

StateKey = tuple  # (player, boxes sorted row-major)


class IllegalMove(ValueError):
    def __init__(self, direction: Direction, step: int | None = None):
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"illegal move {direction.name}{where}")
        self.direction = direction
        self.step = step


@dataclass(frozen=True)
class State:
    player: Position
    boxes: frozenset[Position]

    @classmethod
    def initial(cls, level: Level) -> State:
        return cls(level.initial_player, level.initial_boxes)


def legal_moves(state: State, grid: Grid) -> list[Move]:
    """Moves in U, D, L, R order; pushes are annotated."""
    floor = grid.floor
    boxes = state.boxes
    pr, pc = state.player
    out = []
    for d in DIRECTIONS:
        dr, dc = d.value
        target = (pr + dr, pc + dc)
        if target not in floor:
            continue
        if target in boxes:
            beyond = (pr + 2 * dr, pc + 2 * dc)
            if beyond in floor and beyond not in boxes:
                out.append(Move(d, True))
        else:
            out.append(Move(d, False))
    return out


def successors(state: State, grid: Grid) -> list[tuple[Move, State]]:
    return [(m, apply_move(state, m, grid)) for m in legal_moves(state, grid)]


def apply_move(state: State, m: Move | Direction, grid: Grid) -> State:
    d = m.direction if isinstance(m, Move) else m
    target = d.step(state.player)
    if target not in grid.floor:
        raise IllegalMove(d)
    if target in state.boxes:
        beyond = d.step(target)
        if beyond not in grid.floor or beyond in state.boxes:
            raise IllegalMove(d)
        return State(target, (state.boxes - {target}) | {beyond})
    return State(target, state.boxes)


def is_push(state: State, d: Direction) -> bool:
    return d.step(state.player) in state.boxes


def is_goal(state: State, grid: Grid) -> bool:
    return state.boxes == grid.goals


def state_key(state: State) -> StateKey:
    return (tuple(state.player), tuple(sorted(tuple(b) for b in state.boxes)))


def render(state: State, grid: Grid) -> str:
    return render_cells(grid, state.player, state.boxes)


def replay(level: Level, moves: str | Iterable[Direction | Move]) -> list[State]:
    """Apply a move transcript from the initial state; returns every visited state.

    Raises IllegalMove carrying the 1-based index of the offending move.
    """
    if isinstance(moves, str):
        moves = text_to_directions(moves)
    grid = level.grid
    states = [State.initial(level)]
    for i, m in enumerate(moves, 1):
        d = m.direction if isinstance(m, Move) else m
        try:
            states.append(apply_move(states[-1], d, grid))
        except IllegalMove:
            raise IllegalMove(d, i) from None
    return states


def solves(level: Level, moves) -> bool:
    try:
        return is_goal(replay(level, moves)[-1], level.grid)
    except IllegalMove:
        return False
