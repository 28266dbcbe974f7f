"""
Comparing the search engines on the bundled corpus
==================================================

Every engine runs on every corpus level. The table shows solution length
and how many states each engine expanded.
"""

import statistics

from sokosearch import load_corpus, solve
from sokosearch.search import SearchLimits

levels = load_corpus()
engines = [
    ("bfs", {}),
    ("dfs", {}),
    ("dfs-id", {}),
    ("backtracking", {}),
    ("ucs", {"cost_model": "unit"}),
    ("astar", {"heuristic": "greedy-manhattan"}),
    ("astar", {"heuristic": "hungarian-manhattan"}),
]
names = [a if not kw else f"{a}:{next(iter(kw.values()))}" for a, kw in engines]
limits = SearchLimits(timeout=10)

# Each cell is "steps/expanded".
print("level " + " ".join(f"{n:>24}" for n in names))
expanded = {n: [] for n in names}
for level in levels:
    cells = []
    for name, (algo, kw) in zip(names, engines):
        out = solve(level, algo, limits, **kw)
        expanded[name].append(out.nodes_expanded)
        cells.append(f"{out.steps if out.solved else out.status.value}/{out.nodes_expanded}")
    print(f"{level.name:5} " + " ".join(f"{c:>24}" for c in cells))

# Depth-first search finds a solution quickly but rarely the shortest one.
# The optimal engines agree on length, and the heuristics cut the work.
print("\nmedian states expanded")
for name in names:
    print(f"  {name:28} {statistics.median(expanded[name]):>8}")
