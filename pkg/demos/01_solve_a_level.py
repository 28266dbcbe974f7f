"""
Solving a level and replaying the answer
========================================

Parse a small level, solve it with breadth-first search and with A*, then
watch the solution frame by frame.
"""

from sokosearch import parse_level, replay, solve_astar, solve_bfs
from sokosearch.state import render

# Levels are plain text: walls '#', floor ' ', boxes '$', goals '.',
# the player '@', and '*' / '+' for a box or player standing on a goal.
level = parse_level(
    """\
#######
#     #
# $$ @#
#.  . #
#######""",
    name="warehouse",
)
print(f"{level.width}x{level.height}, {len(level.initial_boxes)} boxes")

# Breadth-first search returns a minimum-move solution.
bfs = solve_bfs(level)
print("bfs  :", bfs.status.value, bfs.moves, f"({bfs.nodes_expanded} states expanded)")

# A* with the assignment-based Manhattan estimate finds an equally short
# solution while expanding fewer states.
astar = solve_astar(level, h="hungarian-manhattan")
print("astar:", astar.status.value, astar.moves, f"({astar.nodes_expanded} states expanded)")

# Replay the moves. Every frame uses the same alphabet as the input.
for i, state in enumerate(replay(level, astar.moves)):
    label = "start" if i == 0 else f"after {astar.moves[i - 1]}"
    print(f"\n{label}\n{render(state, level.grid)}")
