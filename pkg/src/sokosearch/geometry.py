"""Grid coordinates, move directions and the dihedral symmetry group."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple


class Position(NamedTuple):
    row: int
    col: int


class Direction(enum.Enum):
    U = (-1, 0)
    D = (1, 0)
    L = (0, -1)
    R = (0, 1)

    @property
    def dr(self) -> int:
        return self.value[0]

    @property
    def dc(self) -> int:
        return self.value[1]

    @property
    def opposite(self) -> Direction:
        return _OPPOSITE[self]

    def step(self, p: tuple[int, int]) -> Position:
        return Position(p[0] + self.value[0], p[1] + self.value[1])

    @classmethod
    def from_delta(cls, dr: int, dc: int) -> Direction:
        return _BY_DELTA[(dr, dc)]

    @classmethod
    def from_char(cls, ch: str) -> Direction:
        try:
            return cls[ch.upper()]
        except KeyError:
            raise ValueError(f"not a move character: {ch!r}") from None


# Fixed expansion order for every engine.
DIRECTIONS: tuple[Direction, ...] = (Direction.U, Direction.D, Direction.L, Direction.R)

_OPPOSITE = {
    Direction.U: Direction.D,
    Direction.D: Direction.U,
    Direction.L: Direction.R,
    Direction.R: Direction.L,
}
_BY_DELTA = {d.value: d for d in Direction}


@dataclass(frozen=True)
class Move:
    """A single player step; ``pushed`` is set when the step displaces a box."""

    direction: Direction
    pushed: bool = False

    def __str__(self) -> str:
        return self.direction.name


def moves_to_text(moves) -> str:
    return "".join(m.direction.name for m in moves)


def text_to_directions(text: str) -> list[Direction]:
    """Parse a move string over ``UDLR``; lowercase is accepted."""
    return [Direction.from_char(ch) for ch in text.strip()]


class Symmetry(enum.Enum):
    """The eight rotations and reflections of a rectangular board.

    Each value is the integer matrix ``(a, b, c, d)`` acting on a
    displacement ``(dr, dc)`` as ``(a*dr + b*dc, c*dr + d*dc)``.
    """

    IDENTITY = (1, 0, 0, 1)
    ROT90 = (0, 1, -1, 0)  # clockwise
    ROT180 = (-1, 0, 0, -1)
    ROT270 = (0, -1, 1, 0)
    FLIP_H = (1, 0, 0, -1)  # mirror left-right
    FLIP_V = (-1, 0, 0, 1)  # mirror top-bottom
    TRANSPOSE = (0, 1, 1, 0)  # main diagonal
    ANTI_TRANSPOSE = (0, -1, -1, 0)  # anti-diagonal

    def map_delta(self, dr: int, dc: int) -> tuple[int, int]:
        a, b, c, d = self.value
        return a * dr + b * dc, c * dr + d * dc

    def swaps_axes(self) -> bool:
        return self.value[0] == 0

    def shape(self, height: int, width: int) -> tuple[int, int]:
        """(height, width) of a board after the transform."""
        return (width, height) if self.swaps_axes() else (height, width)

    def map_position(self, p: tuple[int, int], height: int, width: int) -> Position:
        """Map a cell of a ``height x width`` board onto the transformed board."""
        r, c = self.map_delta(p[0], p[1])
        # Translate so that the image of the board starts at (0, 0).
        corners = [self.map_delta(cr, cc) for cr in (0, height - 1) for cc in (0, width - 1)]
        r0 = min(x for x, _ in corners)
        c0 = min(y for _, y in corners)
        return Position(r - r0, c - c0)

    def map_direction(self, d: Direction) -> Direction:
        return Direction.from_delta(*self.map_delta(d.dr, d.dc))

    def compose(self, other: Symmetry) -> Symmetry:
        """The symmetry equal to applying ``other`` first, then ``self``."""
        a1, b1, c1, d1 = self.value
        a2, b2, c2, d2 = other.value
        return Symmetry((a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2))

    @property
    def inverse(self) -> Symmetry:
        for s in Symmetry:
            if s.compose(self) is Symmetry.IDENTITY:
                return s
        raise AssertionError("dihedral group is closed")

    @classmethod
    def from_name(cls, name: str) -> Symmetry:
        return cls[name.upper().replace("-", "_")]
