"""Command line entry point: solve, replay, bench, dataset, validate.

Exit codes: 0 success/solved, 1 usage or parse error, 2 search limit hit,
3 level proven unsolvable. Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import BenchSpec, EngineConfig, emit_report, run_bench, summarize
from .corpus import load_corpus
from .dataset import build_dataset
from .heuristics import HeuristicKind
from .levels import LevelError, load_level, load_levels
from .search import ALGORITHMS, CostModel, PruneConfig, SearchLimits, Status, solve
from .state import IllegalMove, is_goal, render, replay

EXIT_OK, EXIT_USAGE, EXIT_LIMIT, EXIT_UNSOLVABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-depth", type=int, default=300)
    p.add_argument("--timeout", type=float, default=60.0, help="seconds")
    p.add_argument("--max-nodes", type=int, default=10_000_000)
    p.add_argument("--no-hash", action="store_true", help="disable the transposition table")
    p.add_argument("--no-deadlock", action="store_true", help="disable deadlock pruning")
    p.add_argument("--tunnels", action="store_true", help="enable tunnel macros")


def _limits(args) -> SearchLimits:
    return SearchLimits(max_depth=args.max_depth, timeout=args.timeout, max_nodes=args.max_nodes)


def _prune(args) -> PruneConfig:
    return PruneConfig(
        use_hashing=not args.no_hash,
        use_deadlock=not args.no_deadlock,
        use_tunnel_macros=args.tunnels,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sokosearch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one level")
    p.add_argument("level", type=Path)
    p.add_argument("--level-index", type=int, default=1)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--heuristic", choices=[k.value for k in HeuristicKind])
    p.add_argument("--cost-model", choices=["unit", "cf1", "cf2"])
    p.add_argument("--costs", metavar="M,P,U", help="explicit move,push,unpark costs")
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    p.add_argument("--pretty", action="store_true", help="human-readable summary")
    _add_search_flags(p)

    p = sub.add_parser("replay", help="render a move sequence frame by frame")
    p.add_argument("level", type=Path)
    p.add_argument("moves", nargs="?", default="")
    p.add_argument("--level-index", type=int, default=1)
    p.add_argument("--step", action="store_true", help="wait for Enter between frames")

    p = sub.add_parser("bench", help="run an algorithm x level matrix")
    p.add_argument("--levels", type=Path, help="level file or directory (default: bundled corpus)")
    p.add_argument("--algos", default="bfs,dfs,ucs:cf1,astar:hungarian-manhattan")
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="csv")
    p.add_argument("--out", type=Path)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--summary", action="store_true", help="print soft comparisons to stderr")
    _add_search_flags(p)

    p = sub.add_parser("dataset", help="write labeled, augmented training data")
    p.add_argument("--levels", type=Path, help="level file or directory (default: bundled corpus)")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--split", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-nodes", type=int, default=1_000_000)

    p = sub.add_parser("validate", help="check level files")
    p.add_argument("paths", type=Path, nargs="+")
    return parser


def _cost_model(args) -> CostModel | None:
    if args.cost_model and args.costs:
        raise UsageError("use either --cost-model or --costs, not both")
    if args.costs:
        return CostModel.parse(args.costs)
    if args.cost_model:
        return CostModel.parse(args.cost_model)
    return None


def cmd_solve(args) -> int:
    cost = _cost_model(args)
    if args.algo == "astar" and args.heuristic is None:
        raise UsageError("--algo astar requires --heuristic")
    if args.algo != "astar" and args.heuristic is not None:
        raise UsageError("--heuristic only applies to --algo astar")
    if args.algo == "ucs" and cost is None:
        raise UsageError("--algo ucs requires --cost-model or --costs")
    if args.algo != "ucs" and cost is not None:
        raise UsageError("--cost-model/--costs only apply to --algo ucs")
    level = load_level(args.level, args.level_index)
    heuristic = HeuristicKind.parse(args.heuristic) if args.heuristic else None
    out = solve(level, args.algo, _limits(args), _prune(args), heuristic, cost)

    if args.pretty:
        print(f"level      {level.name}")
        print(f"algorithm  {out.algo}" + (f" ({out.heuristic or out.cost_model})" if out.heuristic or out.cost_model else ""))
        print(f"status     {out.status.value}")
        print(f"steps      {out.steps if out.solved else '-'}")
        print(f"moves      {out.moves or '-'}")
        print(f"expanded   {out.nodes_expanded}")
        print(f"generated  {out.nodes_generated}")
        print(f"time       {out.elapsed * 1000:.1f} ms")
    elif args.format == "json":
        print(json.dumps(out.to_dict()))
    else:
        row = out.to_dict()
        row.update(level=level.name, prune=out.prune.label(), steps=out.steps if out.solved else None)
        sys.stdout.write(emit_report([row], args.format))

    if out.status is Status.SOLVED:
        return EXIT_OK
    if out.status is Status.UNSOLVABLE:
        return EXIT_UNSOLVABLE
    return EXIT_LIMIT


def cmd_replay(args) -> int:
    level = load_level(args.level, args.level_index)
    try:
        states = replay(level, args.moves)
    except IllegalMove as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for i, s in enumerate(states):
        if i:
            print()
            if args.step:
                input()
        print(render(s, level.grid))
    if not is_goal(states[-1], level.grid):
        print("note: final frame is not solved", file=sys.stderr)
    return EXIT_OK


def _level_sources(path: Path | None):
    return [path] if path is not None else load_corpus()


def cmd_bench(args) -> int:
    prune = _prune(args)
    try:
        engines = [EngineConfig.parse(a, prune) for a in args.algos.split(",") if a.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    spec = BenchSpec(
        levels=_level_sources(args.levels),
        engines=engines,
        limits=_limits(args),
        repetitions=args.reps,
        jobs=max(1, args.jobs),
    )
    rows = run_bench(spec)
    text = emit_report(rows, args.format)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.summary:
        print(json.dumps(summarize(rows), indent=2), file=sys.stderr)
    return EXIT_OK


def cmd_dataset(args) -> int:
    if args.levels is None:
        levels = load_corpus()
    elif args.levels.is_dir():
        levels = load_corpus(args.levels)
    else:
        levels = load_levels(args.levels)
    limits = SearchLimits(max_nodes=args.max_nodes)
    manifest = build_dataset(levels, args.out, args.split, args.seed, limits)
    print(json.dumps({"out": str(args.out), "samples": manifest.sample_count,
                      "train": manifest.train_count, "test": manifest.test_count}))
    return EXIT_OK


def cmd_validate(args) -> int:
    ok = True
    files = []
    for path in args.paths:
        files.extend(sorted(path.glob("*.xsb")) if path.is_dir() else [path])
    for f in files:
        try:
            levels = load_levels(f)
        except (OSError, LevelError) as exc:
            ok = False
            print(f"{f}: error: {exc}")
            continue
        for level in levels:
            g = level.grid
            print(
                f"{f}: {level.name}: ok {g.width}x{g.height} boxes={len(level.initial_boxes)} "
                f"goals={len(g.goals)} dead={len(g.dead_squares)} tunnels={len({p for p, _ in g.tunnels})}"
            )
    return EXIT_OK if ok else EXIT_USAGE


COMMANDS = {
    "solve": cmd_solve,
    "replay": cmd_replay,
    "bench": cmd_bench,
    "dataset": cmd_dataset,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, IndexError, ValueError) as exc:  # LevelError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
