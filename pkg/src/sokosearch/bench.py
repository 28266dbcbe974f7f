"""Benchmark harness: run an algorithm x level matrix and tabulate time, states and steps."""
from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .heuristics import HeuristicKind
from .levels import Level, LevelError, load_levels
from .search import (
    CostModel,
    PruneConfig,
    SearchLimits,
    SearchOutcome,
    Status,
    solve,
    solve_bfs,
)

CSV_COLUMNS = (
    "level",
    "algo",
    "heuristic",
    "cost_model",
    "prune",
    "status",
    "steps",
    "oracle",
    "gap",
    "nodes_expanded",
    "nodes_generated",
    "elapsed_ms",
)

# Engines whose solutions are minimum-move by construction.
OPTIMAL_ENGINES = {
    ("backtracking", None, None),
    ("bfs", None, None),
    ("dfs-id", None, None),
    ("ucs", None, "unit"),
    ("astar", "greedy-manhattan", None),
    ("astar", "hungarian-manhattan", None),
}

OracleTable = dict  # level name -> optimal move count (None if unsolvable)


class OracleInfeasible(RuntimeError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    algo: str
    heuristic: HeuristicKind | None = None
    cost_model: CostModel | None = None
    prune: PruneConfig = field(default_factory=PruneConfig)

    @classmethod
    def parse(cls, text: str, prune: PruneConfig | None = None) -> EngineConfig:
        """``bfs``, ``ucs:cf1``, ``ucs:1,2,5``, ``astar:hungarian-manhattan``."""
        algo, _, arg = text.strip().partition(":")
        algo = algo.lower()
        prune = prune or PruneConfig()
        if algo == "astar":
            if not arg:
                raise ValueError("astar needs a heuristic, e.g. astar:hungarian-manhattan")
            return cls(algo, heuristic=HeuristicKind.parse(arg), prune=prune)
        if algo == "ucs":
            if not arg:
                raise ValueError("ucs needs a cost model, e.g. ucs:cf1")
            return cls(algo, cost_model=CostModel.parse(arg), prune=prune)
        if arg:
            raise ValueError(f"{algo} takes no argument (got {text!r})")
        if algo not in ("backtracking", "dfs", "dfs-id", "bfs"):
            raise ValueError(f"unknown algorithm {algo!r}")
        return cls(algo, prune=prune)

    @property
    def heuristic_name(self) -> str | None:
        return self.heuristic.value if self.heuristic else None

    @property
    def cost_name(self) -> str | None:
        return self.cost_model.name if self.cost_model else None

    @property
    def is_optimal(self) -> bool:
        return (self.algo, self.heuristic_name, self.cost_name) in OPTIMAL_ENGINES

    def run(self, level: Level, limits: SearchLimits) -> SearchOutcome:
        return solve(level, self.algo, limits, self.prune, self.heuristic, self.cost_model)


@dataclass
class BenchSpec:
    levels: list  # Level objects and/or paths to files or directories
    engines: list[EngineConfig]
    limits: SearchLimits = field(default_factory=SearchLimits)
    repetitions: int = 3
    jobs: int = 1
    oracle: OracleTable | None = None

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


def build_oracle(levels, max_nodes: int = 1_000_000) -> OracleTable:
    """Optimal move counts by exhaustive BFS (duplicate detection only, no other pruning)."""
    table: OracleTable = {}
    limits = SearchLimits(max_depth=1_000_000, timeout=1e9, max_nodes=max_nodes)
    prune = PruneConfig(use_hashing=True, use_deadlock=False, use_tunnel_macros=False)
    for level in levels:
        out = solve_bfs(level, limits, prune)
        if out.status is Status.NODES_EXCEEDED:
            raise OracleInfeasible(f"{level.name}: more than {max_nodes} states")
        table[level.name] = out.steps if out.solved else None
    return table


def _expand_refs(refs) -> list[tuple[str, Level | Exception]]:
    out = []
    for ref in refs:
        if isinstance(ref, Level):
            out.append((ref.name, ref))
            continue
        path = Path(ref)
        files = sorted(path.glob("*.xsb")) if path.is_dir() else [path]
        for f in files:
            try:
                out.extend((lv.name, lv) for lv in load_levels(f))
            except (OSError, LevelError) as exc:
                out.append((f.stem, exc))
    return out


def _base_row(name: str, cfg: EngineConfig) -> dict:
    return {
        "level": name,
        "algo": cfg.algo,
        "heuristic": cfg.heuristic_name,
        "cost_model": cfg.cost_name,
        "prune": cfg.prune.label(),
    }


def _run_row(name, level, cfg: EngineConfig, spec: BenchSpec, oracle) -> dict:
    row = _base_row(name, cfg)
    if isinstance(level, Exception):
        row.update(status="error", error=str(level))
        return row
    try:
        outcomes = [cfg.run(level, spec.limits) for _ in range(spec.repetitions)]
    except Exception as exc:  # one broken row must not abort the matrix
        row.update(status="error", error=f"{type(exc).__name__}: {exc}")
        return row
    out = outcomes[0]
    d = out.to_dict()
    d["elapsed_ms"] = round(statistics.median(o.elapsed for o in outcomes) * 1000.0, 3)
    row.update(d)
    row["prune"] = cfg.prune.label()
    row["steps"] = out.steps if out.solved else None
    row["oracle"] = oracle.get(name)
    row["gap"] = out.steps - row["oracle"] if out.solved and row["oracle"] is not None else None
    return row


def run_bench(spec: BenchSpec) -> list[dict]:
    """One row per (level, engine); rows are sorted by level, then engine order."""
    levels = _expand_refs(spec.levels)
    oracle = dict(spec.oracle or {})
    for name, level in levels:
        if name not in oracle and isinstance(level, Level):
            try:
                oracle.update(build_oracle([level]))
            except OracleInfeasible:
                oracle[name] = None

    jobs = [(i, j) for i in range(len(levels)) for j in range(len(spec.engines))]

    def work(ij):
        i, j = ij
        name, level = levels[i]
        return (name, j), _run_row(name, level, spec.engines[j], spec, oracle)

    if spec.jobs > 1:
        with ThreadPoolExecutor(max_workers=spec.jobs) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(ij) for ij in jobs]
    results.sort(key=lambda kv: kv[0])
    return [row for _, row in results]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:g}"
    return str(v)


def emit_report(rows: list[dict], fmt: str = "csv") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=False)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow([_cell(row.get(c)) for c in CSV_COLUMNS])
        return buf.getvalue()
    if fmt in ("markdown", "md"):
        ordered = sorted(rows, key=lambda r: (r["level"], r["algo"]))
        lines = [
            "| " + " | ".join(CSV_COLUMNS) + " |",
            "|" + "|".join("---" for _ in CSV_COLUMNS) + "|",
        ]
        for row in ordered:
            lines.append("| " + " | ".join(_cell(row.get(c)) for c in CSV_COLUMNS) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def summarize(rows: list[dict]) -> dict:
    """Soft comparisons across the matrix (reported, never asserted by the harness)."""

    def median_nodes(algo, heuristic=None):
        vals = [
            r["nodes_expanded"]
            for r in rows
            if r["algo"] == algo and r.get("heuristic") == heuristic and r.get("status") == "solved"
        ]
        return statistics.median(vals) if vals else None

    by_level: dict[str, dict] = {}
    for r in rows:
        by_level.setdefault(r["level"], {})[(r["algo"], r.get("heuristic"), r.get("cost_model"))] = r
    dfs_worse = dfs_total = 0
    for cells in by_level.values():
        dfs, bfs = cells.get(("dfs", None, None)), cells.get(("bfs", None, None))
        if dfs and bfs and bfs.get("status") == "solved":
            dfs_total += 1
            if dfs.get("status") != "solved" or dfs["steps"] > bfs["steps"]:
                dfs_worse += 1
    gaps = [r["gap"] for r in rows if r.get("gap") is not None]
    return {
        "rows": len(rows),
        "solved": sum(r.get("status") == "solved" for r in rows),
        "max_gap": max(gaps) if gaps else None,
        "dfs_longer_or_failed": f"{dfs_worse}/{dfs_total}",
        "median_nodes_astar_greedy_manhattan": median_nodes("astar", "greedy-manhattan"),
        "median_nodes_astar_hungarian_manhattan": median_nodes("astar", "hungarian-manhattan"),
        "median_nodes_bfs": median_nodes("bfs"),
    }
