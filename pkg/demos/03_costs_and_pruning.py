"""
Cost functions and pruning
==========================

Uniform-cost search can price plain moves, pushes and pushes that take a
box off a goal ("unparking") differently. The second half switches the
pruning techniques on and off and counts the states breadth-first search
has to expand.
"""

from sokosearch import Direction, load_corpus, solve_bfs, solve_ucs
from sokosearch.search import CF1, CF2, UNIT, PruneConfig
from sokosearch.state import replay

corpus = {lv.name: lv for lv in load_corpus()}


def unparks(level, moves):
    n = 0
    for state, ch in zip(replay(level, moves), moves):
        target = Direction[ch].step(state.player)
        n += target in state.boxes and target in level.grid.goals
    return n


# L07 forces one box across a goal, so every model pays for one unpark and
# the totals differ only in its price. L14 has an unpark-free route of the
# same length, which is what all three models pick.
for name in ("L07", "L14"):
    level = corpus[name]
    print(name)
    for model in (UNIT, CF1, CF2):
        out = solve_ucs(level, cost=model)
        print(f"  {model.name:5} cost={out.total_cost:<4g} moves={out.steps:<3} unparks={unparks(level, out.moves)}")

# Pruning never changes the answer, only the amount of work.
configs = {
    "none": PruneConfig(use_hashing=False, use_deadlock=False),
    "hashing": PruneConfig(use_hashing=True, use_deadlock=False),
    "hashing+deadlock": PruneConfig(),
    "all three": PruneConfig(use_tunnel_macros=True),
}
print("\nstates expanded by bfs")
print("level " + "".join(f"{k:>18}" for k in configs))
for name in ("L03", "L04", "L09", "L11"):
    row = [solve_bfs(corpus[name], None, cfg) for cfg in configs.values()]
    assert len({out.steps for out in row}) == 1
    print(f"{name:5} " + "".join(f"{out.nodes_expanded:>18}" for out in row))
