"""Search engines: backtracking, DFS, DFS-ID, BFS, UCS and A*.

All engines share one successor generator (legal moves only, optional
deadlock guard, optional tunnel macros), the same limits and the same
fixed U, D, L, R child order, so node counts are reproducible.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import sys
import time
from collections import deque
from dataclasses import dataclass, field

from .deadlock import is_deadlocked
from .geometry import Direction, Move, Position, moves_to_text
from .heuristics import HeuristicKind, evaluate
from .levels import Grid, Level
from .state import State, apply_move, is_goal, legal_moves

HORIZONTAL = "h"
VERTICAL = "v"


@dataclass(frozen=True)
class SearchLimits:
    max_depth: int = 300
    timeout: float = 60.0
    max_nodes: int = 10_000_000

    def __post_init__(self):
        if self.max_depth <= 0 or self.timeout <= 0 or self.max_nodes <= 0:
            raise ValueError(f"limits must be positive: {self}")


@dataclass(frozen=True)
class CostModel:
    c_move: float = 1
    c_push: float = 1
    c_unpark: float = 1
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        if min(self.c_move, self.c_push, self.c_unpark) < 1:
            raise ValueError(f"costs must be >= 1: {self}")

    def edge_cost(self, state: State, move: Move, grid: Grid) -> float:
        """Cost of one step taken from ``state``."""
        if not move.pushed:
            return self.c_move
        if move.direction.step(state.player) in grid.goals:
            return self.c_unpark
        return self.c_push

    @classmethod
    def parse(cls, spec: str) -> CostModel:
        """``unit``, ``cf1``, ``cf2`` or an explicit ``move,push,unpark`` triple."""
        key = spec.strip().lower()
        if key in PRESETS:
            return PRESETS[key]
        try:
            m, p, u = (float(x) for x in key.split(","))
        except ValueError:
            raise ValueError(f"unknown cost model {spec!r}") from None
        return cls(m, p, u, name=f"{m:g},{p:g},{u:g}")


UNIT = CostModel(1, 1, 1, name="unit")
# Unpark > push > move.
CF1 = CostModel(1, 2, 5, name="cf1")
# As CF1 but unpark costs the same as a plain move.
CF2 = CostModel(1, 2, 1, name="cf2")
PRESETS = {"unit": UNIT, "cf1": CF1, "cf2": CF2}


@dataclass(frozen=True)
class PruneConfig:
    use_hashing: bool = True
    use_deadlock: bool = True
    use_tunnel_macros: bool = False

    def as_dict(self) -> dict:
        return {
            "hashing": self.use_hashing,
            "deadlock": self.use_deadlock,
            "tunnels": self.use_tunnel_macros,
        }

    def label(self) -> str:
        flags = [n for n, on in self.as_dict().items() if on]
        return "+".join(flags) if flags else "none"


class Status(enum.Enum):
    SOLVED = "solved"
    TIMEOUT = "timeout"
    DEPTH_EXCEEDED = "depth_exceeded"
    NODES_EXCEEDED = "nodes_exceeded"
    UNSOLVABLE = "unsolvable"


@dataclass
class SearchOutcome:
    status: Status
    moves: str = ""
    nodes_expanded: int = 0
    nodes_generated: int = 0
    elapsed: float = 0.0
    max_depth_reached: int = 0
    total_cost: float = 0.0
    algo: str = ""
    heuristic: str | None = None
    cost_model: str | None = None
    prune: PruneConfig = field(default_factory=PruneConfig)

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED

    @property
    def steps(self) -> int:
        return len(self.moves)

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "moves": self.moves,
            "nodes_expanded": self.nodes_expanded,
            "nodes_generated": self.nodes_generated,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "max_depth_reached": self.max_depth_reached,
            "total_cost": self.total_cost,
            "algo": self.algo,
            "heuristic": self.heuristic,
            "cost_model": self.cost_model,
            "prune_flags": self.prune.as_dict(),
        }


# --------------------------------------------------------------------------
# tunnels


def detect_tunnels(grid: Grid) -> frozenset[tuple[Position, str]]:
    """Floor cells walled on both sides across an axis.

    ``(p, "h")`` means walls above and below ``p`` (a corridor running
    left-right); ``(p, "v")`` means walls left and right.
    """
    floor = grid.floor
    out = set()
    for p in floor:
        r, c = p
        if (r - 1, c) not in floor and (r + 1, c) not in floor:
            out.add((p, HORIZONTAL))
        if (r, c - 1) not in floor and (r, c + 1) not in floor:
            out.add((p, VERTICAL))
    return frozenset(out)


def _axis(d: Direction) -> str:
    return HORIZONTAL if d in (Direction.L, Direction.R) else VERTICAL


def macro_extend(
    state: State, push: Move, grid: Grid, dead: frozenset | None = None
) -> tuple[State, list[Move]]:
    """Apply ``push`` and keep pushing while the box travels along a tunnel.

    Stops when the box sits on a goal, or when its next cell is not a floor
    tunnel cell of the same axis, holds a box, or is a dead square. Returns
    the final state and every individual move made.
    """
    d = push.direction
    s = apply_move(state, d, grid)
    moves = [Move(d, True)]
    box = d.step(s.player)
    if not push.pushed or box not in s.boxes:
        return s, moves
    axis = _axis(d)
    tunnels = grid.tunnels
    if (box, axis) not in tunnels:
        return s, moves
    while box not in grid.goals:
        nxt = d.step(box)
        if (nxt, axis) not in tunnels or nxt in s.boxes:
            break
        if dead is not None and nxt in dead:
            break
        s = apply_move(s, d, grid)
        moves.append(Move(d, True))
        box = nxt
    return s, moves


# --------------------------------------------------------------------------
# shared machinery


class _Stop(Exception):
    def __init__(self, status: Status):
        self.status = status


class _Node:
    __slots__ = ("state", "parent", "moves", "depth", "cost")

    def __init__(self, state, parent, moves, depth, cost):
        self.state = state
        self.parent = parent
        self.moves = moves
        self.depth = depth
        self.cost = cost

    def path(self) -> list[Move]:
        segs = []
        node = self
        while node is not None:
            segs.append(node.moves)
            node = node.parent
        return [m for seg in reversed(segs) for m in seg]

    def on_path(self, state) -> bool:
        node = self
        while node is not None:
            if node.state == state:
                return True
            node = node.parent
        return False


class _Engine:
    algo = ""
    check_every = 64

    def __init__(self, level: Level, limits: SearchLimits, prune: PruneConfig):
        self.level = level
        self.grid = level.grid
        self.limits = limits
        self.prune = prune
        self.dead = level.grid.dead_squares if prune.use_deadlock else None
        self.expanded = 0
        self.generated = 0
        self.max_depth_reached = 0
        self.depth_cut = False
        self.start = 0.0
        self.deadline = 0.0

    # hooks ---------------------------------------------------------------

    def search(self, root: State):
        """Return (moves, cost) of the solution found, or None when exhausted."""
        raise NotImplementedError

    def describe(self, outcome: SearchOutcome) -> None:
        pass

    # helpers -------------------------------------------------------------

    def tick(self) -> None:
        if self.expanded >= self.limits.max_nodes:
            raise _Stop(Status.NODES_EXCEEDED)
        self.expanded += 1
        if self.expanded % self.check_every == 0 and time.perf_counter() >= self.deadline:
            raise _Stop(Status.TIMEOUT)

    def deadlocked(self, state: State) -> bool:
        return self.dead is not None and is_deadlocked(state, self.grid, self.dead)

    def children(self, state: State) -> list[tuple[tuple[Move, ...], State]]:
        grid = self.grid
        out = []
        for m in legal_moves(state, grid):
            if m.pushed and self.prune.use_tunnel_macros:
                child, seg = macro_extend(state, m, grid, self.dead)
                seg = tuple(seg)
            else:
                child, seg = apply_move(state, m, grid), (m,)
            self.generated += 1
            if self.deadlocked(child):
                continue
            out.append((seg, child))
        return out

    def run(self) -> SearchOutcome:
        self.start = time.perf_counter()
        self.deadline = self.start + self.limits.timeout
        root = State.initial(self.level)
        self.generated = 1
        result = None
        status = None
        try:
            if self.deadlocked(root):
                status = Status.UNSOLVABLE
            else:
                result = self.search(root)
        except _Stop as stop:
            status = stop.status
            result = getattr(self, "best", None)
        if result is not None:
            status = Status.SOLVED
        elif status is None:
            status = Status.DEPTH_EXCEEDED if self.depth_cut else Status.UNSOLVABLE
        outcome = SearchOutcome(
            status=status,
            nodes_expanded=self.expanded,
            nodes_generated=self.generated,
            elapsed=time.perf_counter() - self.start,
            max_depth_reached=self.max_depth_reached,
            algo=self.algo,
            prune=self.prune,
        )
        if result is not None:
            moves, cost = result
            outcome.moves = moves_to_text(moves)
            outcome.total_cost = cost
        self.describe(outcome)
        return outcome


def _unit_cost(moves) -> float:
    return float(len(moves))


# --------------------------------------------------------------------------
# depth-first family


class _DepthFirst(_Engine):
    """Recursive depth-first search over move sequences.

    With hashing on, a state is re-entered only at a strictly smaller depth
    than any earlier visit; the current path is always excluded.
    """

    exhaustive = False

    def __init__(self, *args):
        super().__init__(*args)
        self.best: tuple[list[Move], float] | None = None
        self.seen: dict[State, int] = {}
        self.path_states: set[State] = set()
        self.path: list[tuple[Move, ...]] = []
        needed = self.limits.max_depth + 200
        if sys.getrecursionlimit() < needed:
            sys.setrecursionlimit(needed)

    def dfs(self, state: State, depth: int, bound: int) -> bool:
        """Returns True to stop the whole search."""
        self.tick()
        if depth > self.max_depth_reached:
            self.max_depth_reached = depth
        if is_goal(state, self.grid):
            moves = [m for seg in self.path for m in seg]
            if self.best is None or len(moves) < len(self.best[0]):
                self.best = (moves, _unit_cost(moves))
            return not self.exhaustive
        if depth >= bound:
            self.depth_cut = True
            return False
        self.path_states.add(state)
        try:
            for seg, child in self.children(state):
                nd = depth + len(seg)
                if nd > bound:
                    self.depth_cut = True
                    continue
                if self.best is not None and nd >= len(self.best[0]):
                    continue
                if child in self.path_states:
                    continue
                if self.prune.use_hashing:
                    prev = self.seen.get(child)
                    if prev is not None and prev <= nd:
                        continue
                    self.seen[child] = nd
                self.path.append(seg)
                stop = self.dfs(child, nd, bound)
                self.path.pop()
                if stop:
                    return True
        finally:
            self.path_states.discard(state)
        return False


class Backtracking(_DepthFirst):
    algo = "backtracking"
    exhaustive = True

    def search(self, root):
        self.seen[root] = 0
        self.dfs(root, 0, self.limits.max_depth)
        return self.best


class DFS(_DepthFirst):
    algo = "dfs"

    def search(self, root):
        self.seen[root] = 0
        self.dfs(root, 0, self.limits.max_depth)
        return self.best


class DFSID(_DepthFirst):
    algo = "dfs-id"

    def search(self, root):
        for bound in range(1, self.limits.max_depth + 1):
            self.seen = {root: 0}
            self.depth_cut = False
            self.dfs(root, 0, bound)
            if self.best is not None or not self.depth_cut:
                return self.best
        return None


# --------------------------------------------------------------------------
# breadth-first and best-first


class BFS(_Engine):
    """Expands states in increasing order of move depth.

    Depth buckets rather than a single FIFO keep the order exact when a
    tunnel macro adds several moves in one edge.
    """

    algo = "bfs"

    def search(self, root):
        buckets: dict[int, deque] = {0: deque([_Node(root, None, (), 0, 0.0)])}
        best_depth = {root: 0}
        hashing = self.prune.use_hashing
        max_depth = self.limits.max_depth
        depth = 0
        while buckets:
            if depth not in buckets:
                depth = min(buckets)
            queue = buckets[depth]
            node = queue.popleft()
            if not queue:
                del buckets[depth]
            if hashing and best_depth[node.state] < node.depth:
                continue
            self.tick()
            if node.depth > self.max_depth_reached:
                self.max_depth_reached = node.depth
            if is_goal(node.state, self.grid):
                moves = node.path()
                return moves, _unit_cost(moves)
            if node.depth >= max_depth:
                self.depth_cut = True
                continue
            for seg, child in self.children(node.state):
                nd = node.depth + len(seg)
                if nd > max_depth:
                    self.depth_cut = True
                    continue
                if hashing:
                    prev = best_depth.get(child)
                    if prev is not None and prev <= nd:
                        continue
                    best_depth[child] = nd
                elif node.on_path(child):
                    continue
                buckets.setdefault(nd, deque()).append(_Node(child, node, seg, nd, 0.0))
        return None


class _BestFirst(_Engine):
    """Priority-queue search on (priority, insertion order)."""

    def step_cost(self, state: State, seg) -> float:
        return _unit_cost(seg)

    def priority(self, state: State, cost: float) -> float:
        return cost

    def search(self, root):
        counter = itertools.count()
        start = _Node(root, None, (), 0, 0.0)
        heap = [(self.priority(root, 0.0), next(counter), start)]
        best_cost = {root: 0.0}
        hashing = self.prune.use_hashing
        max_depth = self.limits.max_depth
        while heap:
            _, _, node = heapq.heappop(heap)
            if hashing and best_cost[node.state] < node.cost:
                continue
            self.tick()
            if node.depth > self.max_depth_reached:
                self.max_depth_reached = node.depth
            if is_goal(node.state, self.grid):
                return node.path(), node.cost
            if node.depth >= max_depth:
                self.depth_cut = True
                continue
            for seg, child in self.children(node.state):
                nd = node.depth + len(seg)
                if nd > max_depth:
                    self.depth_cut = True
                    continue
                cost = node.cost + self.step_cost(node.state, seg)
                if hashing:
                    prev = best_cost.get(child)
                    if prev is not None and prev <= cost:
                        continue
                    best_cost[child] = cost
                elif node.on_path(child):
                    continue
                entry = (self.priority(child, cost), next(counter), _Node(child, node, seg, nd, cost))
                heapq.heappush(heap, entry)
        return None


class UCS(_BestFirst):
    algo = "ucs"

    def __init__(self, level, limits, prune, cost: CostModel):
        super().__init__(level, limits, prune)
        self.cost = cost

    def step_cost(self, state, seg):
        total = 0.0
        grid = self.grid
        for m in seg:
            total += self.cost.edge_cost(state, m, grid)
            state = apply_move(state, m, grid)
        return total

    def describe(self, outcome):
        outcome.cost_model = self.cost.name


class AStar(_BestFirst):
    algo = "astar"

    def __init__(self, level, limits, prune, heuristic: HeuristicKind):
        super().__init__(level, limits, prune)
        self.heuristic = heuristic
        self._h: dict[State, float] = {}

    def h(self, state: State) -> float:
        v = self._h.get(state)
        if v is None:
            v = self._h[state] = evaluate(self.heuristic, state, self.grid)
        return v

    def priority(self, state, cost):
        return cost + self.h(state)

    def describe(self, outcome):
        outcome.heuristic = self.heuristic.value


# --------------------------------------------------------------------------
# public entry points


def _defaults(limits, prune):
    return limits or SearchLimits(), prune or PruneConfig()


def solve_backtracking(level: Level, limits: SearchLimits | None = None, prune: PruneConfig | None = None) -> SearchOutcome:
    """Exhaustive depth-first search returning the shortest solution found.

    Branches no shorter than the best solution so far are cut, so with
    ample limits the result is optimal. When a limit interrupts the search
    after a solution was found, that solution is still returned.
    """
    return Backtracking(level, *_defaults(limits, prune)).run()


def solve_dfs(level: Level, limits: SearchLimits | None = None, prune: PruneConfig | None = None) -> SearchOutcome:
    """First solution in U, D, L, R child order; not necessarily shortest."""
    return DFS(level, *_defaults(limits, prune)).run()


def solve_dfs_id(level: Level, limits: SearchLimits | None = None, prune: PruneConfig | None = None) -> SearchOutcome:
    """Depth-first search repeated with bound 1, 2, ... up to ``max_depth``."""
    return DFSID(level, *_defaults(limits, prune)).run()


def solve_bfs(level: Level, limits: SearchLimits | None = None, prune: PruneConfig | None = None) -> SearchOutcome:
    return BFS(level, *_defaults(limits, prune)).run()


def solve_ucs(
    level: Level,
    limits: SearchLimits | None = None,
    prune: PruneConfig | None = None,
    cost: CostModel = UNIT,
) -> SearchOutcome:
    """Cheapest solution under ``cost``; ties are popped in insertion order."""
    return UCS(level, *_defaults(limits, prune), cost).run()


def solve_astar(
    level: Level,
    limits: SearchLimits | None = None,
    prune: PruneConfig | None = None,
    h: HeuristicKind = HeuristicKind.HUNGARIAN_MANHATTAN,
) -> SearchOutcome:
    if isinstance(h, str):
        h = HeuristicKind.parse(h)
    return AStar(level, *_defaults(limits, prune), h).run()


ALGORITHMS = ("backtracking", "dfs", "dfs-id", "bfs", "ucs", "astar")


def solve(
    level: Level,
    algo: str,
    limits: SearchLimits | None = None,
    prune: PruneConfig | None = None,
    heuristic: HeuristicKind | str | None = None,
    cost_model: CostModel | str | None = None,
) -> SearchOutcome:
    """Dispatch by algorithm name. A* needs a heuristic and UCS a cost model."""
    algo = algo.lower()
    if algo == "astar":
        if heuristic is None:
            raise ValueError("astar requires a heuristic")
        return solve_astar(level, limits, prune, heuristic)
    if heuristic is not None:
        raise ValueError(f"a heuristic only applies to astar, not {algo}")
    if algo == "ucs":
        if cost_model is None:
            raise ValueError("ucs requires a cost model")
        if isinstance(cost_model, str):
            cost_model = CostModel.parse(cost_model)
        return solve_ucs(level, limits, prune, cost_model)
    if cost_model is not None:
        raise ValueError(f"a cost model only applies to ucs, not {algo}")
    engines = {
        "backtracking": solve_backtracking,
        "dfs": solve_dfs,
        "dfs-id": solve_dfs_id,
        "bfs": solve_bfs,
    }
    try:
        engine = engines[algo]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r} (choose from {', '.join(ALGORITHMS)})") from None
    return engine(level, limits, prune)
