"""Sokoban levels in the standard text notation.

Character mapping::

    #  wall            .  goal
    (space) floor      *  box on goal
    $  box             +  player on goal
    @  player

Lines may be ragged. Cells outside the wall-enclosed region reachable by
the player are normalized to walls, so serialization is canonical and
``parse_level(serialize_level(L)) == L`` holds exactly.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .geometry import DIRECTIONS, Direction, Move, Position, Symmetry

MAX_LEVEL_SIZE = 64

WALL = "#"
FLOOR = " "
BOX = "$"
GOAL = "."
BOX_ON_GOAL = "*"
PLAYER = "@"
PLAYER_ON_GOAL = "+"
ALPHABET = frozenset(WALL + FLOOR + BOX + GOAL + BOX_ON_GOAL + PLAYER + PLAYER_ON_GOAL)


class LevelError(ValueError):
    """Base class for level parsing and validation failures."""


class UnknownCharacter(LevelError):
    def __init__(self, char: str, row: int, col: int):
        super().__init__(f"unknown character {char!r} at row {row}, col {col}")
        self.char, self.row, self.col = char, row, col


class NoPlayer(LevelError):
    def __init__(self):
        super().__init__("level has no player")


class MultiplePlayers(LevelError):
    def __init__(self, count: int):
        super().__init__(f"level has {count} players")
        self.count = count


class BoxGoalCountMismatch(LevelError):
    def __init__(self, boxes: int, goals: int):
        super().__init__(f"{boxes} boxes but {goals} goals")
        self.boxes, self.goals = boxes, goals


class UnenclosedBoard(LevelError):
    def __init__(self, row: int, col: int):
        super().__init__(f"floor reachable from the player touches the board edge at ({row}, {col})")
        self.row, self.col = row, col


class UnreachableObject(LevelError):
    def __init__(self, kind: str, pos: Position):
        super().__init__(f"{kind} at ({pos.row}, {pos.col}) lies outside the player's region")
        self.kind, self.pos = kind, pos


class LevelTooLarge(LevelError):
    def __init__(self, height: int, width: int):
        super().__init__(f"level is {width}x{height}, limit is {MAX_LEVEL_SIZE}x{MAX_LEVEL_SIZE}")


@dataclass(frozen=True)
class Grid:
    """The static part of a level. Every in-bounds cell that is not floor is a wall."""

    width: int
    height: int
    walls: frozenset[Position]
    goals: frozenset[Position]
    floor: frozenset[Position] = field(repr=False)

    @classmethod
    def from_floor(cls, height: int, width: int, floor: Iterable, goals: Iterable) -> Grid:
        floor = frozenset(Position(*p) for p in floor)
        walls = frozenset(
            Position(r, c) for r in range(height) for c in range(width) if (r, c) not in floor
        )
        return cls(width, height, walls, frozenset(Position(*g) for g in goals), floor)

    def is_floor(self, p: tuple[int, int]) -> bool:
        return p in self.floor

    @cached_property
    def dead_squares(self) -> frozenset[Position]:
        from .deadlock import compute_dead_squares

        return compute_dead_squares(self)

    @cached_property
    def tunnels(self) -> frozenset[tuple[Position, str]]:
        from .search import detect_tunnels

        return detect_tunnels(self)


@dataclass(frozen=True)
class Level:
    grid: Grid
    initial_player: Position
    initial_boxes: frozenset[Position]
    name: str = field(default="", compare=False)

    @property
    def width(self) -> int:
        return self.grid.width

    @property
    def height(self) -> int:
        return self.grid.height


def _split_lines(text: str) -> list[str]:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    while lines and not lines[0].strip():
        lines.pop(0)
    return lines


def parse_level(text: str, name: str = "") -> Level:
    lines = _split_lines(text)
    if not lines:
        raise LevelError("empty level text")
    height = len(lines)
    width = max(len(line) for line in lines)
    if height > MAX_LEVEL_SIZE or width > MAX_LEVEL_SIZE:
        raise LevelTooLarge(height, width)
    rows = [line.ljust(width) for line in lines]

    goals: set[Position] = set()
    boxes: set[Position] = set()
    players: list[Position] = []
    for r, row in enumerate(rows):
        for c, ch in enumerate(row):
            if ch not in ALPHABET:
                raise UnknownCharacter(ch, r, c)
            p = Position(r, c)
            if ch in (GOAL, BOX_ON_GOAL, PLAYER_ON_GOAL):
                goals.add(p)
            if ch in (BOX, BOX_ON_GOAL):
                boxes.add(p)
            if ch in (PLAYER, PLAYER_ON_GOAL):
                players.append(p)
    if not players:
        raise NoPlayer()
    if len(players) > 1:
        raise MultiplePlayers(len(players))
    if len(boxes) != len(goals):
        raise BoxGoalCountMismatch(len(boxes), len(goals))

    player = players[0]
    floor = {player}
    queue = deque([player])
    while queue:
        p = queue.popleft()
        if p.row in (0, height - 1) or p.col in (0, width - 1):
            raise UnenclosedBoard(p.row, p.col)
        for d in DIRECTIONS:
            q = d.step(p)
            if q not in floor and rows[q.row][q.col] != WALL:
                floor.add(q)
                queue.append(q)
    for kind, cells in (("box", boxes), ("goal", goals)):
        for p in sorted(cells):
            if p not in floor:
                raise UnreachableObject(kind, p)

    grid = Grid.from_floor(height, width, floor, goals)
    return Level(grid, player, frozenset(boxes), name=name)


def split_levels(text: str) -> list[str]:
    """Split a multi-level file on blank lines."""
    blocks: list[list[str]] = [[]]
    for line in text.replace("\r\n", "\n").split("\n"):
        if line.strip():
            blocks[-1].append(line)
        elif blocks[-1]:
            blocks.append([])
    return ["\n".join(b) for b in blocks if b]


def load_levels(path: str | Path) -> list[Level]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    blocks = split_levels(text)
    if len(blocks) == 1:
        return [parse_level(blocks[0], name=path.stem)]
    return [parse_level(b, name=f"{path.stem}#{i}") for i, b in enumerate(blocks, 1)]


def load_level(path: str | Path, index: int = 1) -> Level:
    """Load the ``index``-th (1-based) level of a file."""
    levels = load_levels(path)
    if not 1 <= index <= len(levels):
        raise IndexError(f"{path} holds {len(levels)} level(s); index {index} out of range")
    return levels[index - 1]


def render_cells(grid: Grid, player: tuple[int, int], boxes) -> str:
    out = []
    for r in range(grid.height):
        row = []
        for c in range(grid.width):
            p = (r, c)
            if p not in grid.floor:
                row.append(WALL)
                continue
            goal = p in grid.goals
            if p in boxes:
                row.append(BOX_ON_GOAL if goal else BOX)
            elif p == player:
                row.append(PLAYER_ON_GOAL if goal else PLAYER)
            else:
                row.append(GOAL if goal else FLOOR)
        out.append("".join(row).rstrip())
    return "\n".join(out)


def serialize_level(level: Level) -> str:
    return render_cells(level.grid, level.initial_player, level.initial_boxes)


def transform_level(level: Level, s: Symmetry) -> Level:
    g = level.grid
    h, w = g.height, g.width
    nh, nw = s.shape(h, w)

    def f(p):
        return s.map_position(p, h, w)

    grid = Grid.from_floor(nh, nw, map(f, g.floor), map(f, g.goals))
    return Level(
        grid,
        f(level.initial_player),
        frozenset(map(f, level.initial_boxes)),
        name=level.name,
    )


def transform_move(m: Move | Direction, s: Symmetry):
    if isinstance(m, Direction):
        return s.map_direction(m)
    return Move(s.map_direction(m.direction), m.pushed)
