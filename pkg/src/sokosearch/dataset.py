"""Supervised training data: optimal-action labels, dihedral augmentation, 32x32 encoding.

File format: one sample per line, 1024 cell codes as digits (row-major),
a tab, then the label character. A JSON manifest sits beside the splits.
"""
from __future__ import annotations

import json
import random
from collections import Counter, deque
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .bench import OracleInfeasible
from .deadlock import is_deadlocked
from .geometry import DIRECTIONS, Direction, Move, Position, Symmetry
from .levels import Grid, Level
from .search import SearchLimits
from .state import State, is_goal, successors

SIZE = 32

EXTERIOR, WALL, FLOOR, GOAL, BOX, BOX_ON_GOAL, PLAYER, PLAYER_ON_GOAL = range(8)


class EncodingOverflow(ValueError):
    pass


@dataclass(eq=False)
class Sample:
    encoding: np.ndarray  # (32, 32) uint8 cell codes
    label: Direction
    level: str = ""

    def line(self) -> str:
        return "".join(map(str, self.encoding.ravel().tolist())) + "\t" + self.label.name

    @classmethod
    def from_line(cls, line: str) -> Sample:
        cells, label = line.rstrip("\n").split("\t")
        enc = np.frombuffer(cells.encode("ascii"), dtype=np.uint8) - ord("0")
        return cls(enc.reshape(SIZE, SIZE).copy(), Direction[label])


@dataclass
class DatasetManifest:
    sample_count: int
    label_counts: dict[str, int]
    augmentation_factor: int
    base_count: int
    source_levels: list[str]
    seed: int
    split: float
    train_count: int
    test_count: int
    label_frequencies: dict[str, float] = field(default_factory=dict)


def encode_state(state: State, grid: Grid) -> np.ndarray:
    if grid.height > SIZE or grid.width > SIZE:
        raise EncodingOverflow(f"{grid.width}x{grid.height} level does not fit in {SIZE}x{SIZE}")
    enc = np.full((SIZE, SIZE), EXTERIOR, dtype=np.uint8)
    enc[: grid.height, : grid.width] = WALL
    for p in grid.floor:
        enc[p] = GOAL if p in grid.goals else FLOOR
    for b in state.boxes:
        enc[b] = BOX_ON_GOAL if b in grid.goals else BOX
    enc[state.player] = PLAYER_ON_GOAL if state.player in grid.goals else PLAYER
    return enc


def decode_state(enc: np.ndarray) -> tuple[Grid, State]:
    """Inverse of ``encode_state``."""
    rows, cols = np.nonzero(enc != EXTERIOR)
    height, width = int(rows.max()) + 1, int(cols.max()) + 1
    floor, goals, boxes = set(), set(), set()
    player = None
    for r in range(height):
        for c in range(width):
            code = int(enc[r, c])
            p = Position(r, c)
            if code in (EXTERIOR, WALL):
                continue
            floor.add(p)
            if code in (GOAL, BOX_ON_GOAL, PLAYER_ON_GOAL):
                goals.add(p)
            if code in (BOX, BOX_ON_GOAL):
                boxes.add(p)
            if code in (PLAYER, PLAYER_ON_GOAL):
                player = p
    return Grid.from_floor(height, width, floor, goals), State(player, frozenset(boxes))


def label_states(level: Level, limits: SearchLimits | None = None) -> list[tuple[State, Move]]:
    """Optimal first move for every reachable, live, unsolved state.

    Enumerates the reachable state graph, computes the exact remaining move
    count of every state backwards from the goal states, and picks the first
    move in U, D, L, R order that decreases it. States from which the goal
    is unreachable carry no optimal action and are left out.
    """
    limits = limits or SearchLimits()
    grid = level.grid
    root = State.initial(level)
    order = [root]
    edges: dict[State, list[tuple[Move, State]]] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        s = queue.popleft()
        edges[s] = succ = successors(s, grid)
        for _, t in succ:
            if t not in seen:
                if len(seen) >= limits.max_nodes:
                    raise OracleInfeasible(f"{level.name}: more than {limits.max_nodes} states")
                seen.add(t)
                order.append(t)
                queue.append(t)

    preds: dict[State, list[State]] = {s: [] for s in order}
    for s, succ in edges.items():
        for _, t in succ:
            preds[t].append(s)
    dist = {s: 0 for s in order if is_goal(s, grid)}
    queue = deque(dist)
    while queue:
        t = queue.popleft()
        for s in preds[t]:
            if s not in dist:
                dist[s] = dist[t] + 1
                queue.append(s)

    dead = grid.dead_squares
    out = []
    for s in order:
        d = dist.get(s)
        if d is None or d == 0 or is_deadlocked(s, grid, dead):
            continue
        move = next(m for m, t in edges[s] if dist.get(t) == d - 1)
        out.append((s, move))
    return out


def _bounding_shape(enc: np.ndarray) -> tuple[int, int]:
    rows, cols = np.nonzero(enc != EXTERIOR)
    return int(rows.max()) + 1, int(cols.max()) + 1


@lru_cache(maxsize=None)
def _index_map(h: int, w: int, s: Symmetry) -> tuple[np.ndarray, np.ndarray]:
    dst = [s.map_position((r, c), h, w) for r in range(h) for c in range(w)]
    return np.array([p.row for p in dst], dtype=np.intp), np.array([p.col for p in dst], dtype=np.intp)


def transform_encoding(enc: np.ndarray, s: Symmetry) -> np.ndarray:
    """Apply a symmetry to the level region and re-anchor it at the top-left."""
    h, w = _bounding_shape(enc)
    nh, nw = s.shape(h, w)
    if nh > SIZE or nw > SIZE:
        raise EncodingOverflow(f"{s.name} turns {w}x{h} into {nw}x{nh}")
    out = np.full((SIZE, SIZE), EXTERIOR, dtype=np.uint8)
    dr, dc = _index_map(h, w, s)
    out[dr, dc] = enc[:h, :w].ravel()
    return out


def augment(samples: list[Sample]) -> list[Sample]:
    """Eight copies of each sample, one per symmetry; duplicates are kept."""
    out = []
    for smp in samples:
        for s in Symmetry:
            out.append(Sample(transform_encoding(smp.encoding, s), s.map_direction(smp.label), smp.level))
    return out


def make_samples(level: Level, limits: SearchLimits | None = None) -> list[Sample]:
    grid = level.grid
    return [Sample(encode_state(s, grid), m.direction, level.name) for s, m in label_states(level, limits)]


def write_dataset(
    samples: list[Sample],
    path: str | Path,
    split: float = 0.10,
    seed: int = 0,
    augmentation_factor: int = 1,
    base_count: int | None = None,
) -> DatasetManifest:
    """Shuffle under ``seed`` and write ``train.tsv``, ``test.tsv`` and ``manifest.json``."""
    if not 0 < split < 1:
        raise ValueError(f"split must lie strictly between 0 and 1, got {split}")
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create dataset directory {path}: {exc}") from exc

    lines = [smp.line() for smp in samples]
    idx = list(range(len(lines)))
    random.Random(seed).shuffle(idx)
    n_test = int(round(len(lines) * split))
    test_idx, train_idx = idx[:n_test], idx[n_test:]

    counts = Counter(smp.label.name for smp in samples)
    total = len(samples)
    manifest = DatasetManifest(
        sample_count=total,
        label_counts={d.name: counts.get(d.name, 0) for d in DIRECTIONS},
        augmentation_factor=augmentation_factor,
        base_count=base_count if base_count is not None else total // augmentation_factor,
        source_levels=sorted({smp.level for smp in samples}),
        seed=seed,
        split=split,
        train_count=len(train_idx),
        test_count=len(test_idx),
        label_frequencies={d.name: (counts.get(d.name, 0) / total if total else 0.0) for d in DIRECTIONS},
    )
    files = {
        "train.tsv": "".join(lines[i] + "\n" for i in train_idx),
        "test.tsv": "".join(lines[i] + "\n" for i in test_idx),
        "manifest.json": json.dumps(asdict(manifest), indent=2) + "\n",
    }
    for name, text in files.items():
        target = path / name
        try:
            target.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {target}: {exc}") from exc
    return manifest


def build_dataset(
    levels: list[Level],
    path: str | Path,
    split: float = 0.10,
    seed: int = 0,
    limits: SearchLimits | None = None,
) -> DatasetManifest:
    """Label every level, augment eightfold and write the splits."""
    base: list[Sample] = []
    for level in levels:
        base.extend(make_samples(level, limits))
    samples = augment(base)
    return write_dataset(samples, path, split, seed, augmentation_factor=len(Symmetry), base_count=len(base))
