import random

import numpy as np
import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from sokosearch.heuristics import (
    HeuristicKind,
    Metric,
    cost_matrix,
    evaluate,
    greedy_heuristic,
    hungarian_heuristic,
    metric_distance,
    solve_assignment,
)
from sokosearch.levels import Grid, parse_level, serialize_level
from sokosearch.state import State

from conftest import TINY


def strip_grid(boxes, goals):
    cells = set(boxes) | set(goals)
    return Grid.from_floor(8, 8, cells, goals), State((7, 7), frozenset(boxes))


def test_metric_examples():
    assert metric_distance((0, 0), (0, 3), Metric.MANHATTAN) == 3
    assert metric_distance((0, 0), (3, 4), Metric.EUCLID) == 5.0
    for m in Metric:
        assert metric_distance((2, 5), (2, 5), m) == 0


@given(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), st.tuples(st.integers(-50, 50), st.integers(-50, 50)))
def test_euclid_below_manhattan(a, b):
    assert metric_distance(a, b, Metric.EUCLID) <= metric_distance(a, b, Metric.MANHATTAN) + 1e-12


def test_greedy_examples():
    lv = parse_level(TINY)
    assert greedy_heuristic(State.initial(lv), lv.grid, Metric.MANHATTAN) == 1
    grid, s = strip_grid([(0, 0), (0, 1)], [(0, 2), (0, 3)])
    assert greedy_heuristic(s, grid, Metric.MANHATTAN) == 3
    assert hungarian_heuristic(s, grid, Metric.MANHATTAN) == 4


def test_zero_at_goal(corpus):
    for lv in corpus:
        s = State(lv.initial_player, lv.grid.goals)
        for kind in HeuristicKind:
            assert evaluate(kind, s, lv.grid) == 0


def test_single_box_hungarian_equals_greedy():
    lv = parse_level("#######\n#@    #\n#  $  #\n#    .#\n#######")
    s = State.initial(lv)
    for m in Metric:
        assert hungarian_heuristic(s, lv.grid, m) == pytest.approx(greedy_heuristic(s, lv.grid, m))


def test_assignment_small():
    assert solve_assignment([[1]]) == ([0], 1.0)
    a, total = solve_assignment([[2, 3], [1, 2]])
    assert total == 4
    assert sorted(a) == [0, 1]
    assert solve_assignment(np.zeros((0, 0))) == ([], 0.0)


def test_assignment_rejects_non_square():
    with pytest.raises(ValueError):
        solve_assignment([[1, 2, 3], [4, 5, 6]])


def test_assignment_5x5_brute_force():
    rng = random.Random(5)
    for _ in range(50):
        m = [[rng.randint(0, 20) for _ in range(5)] for _ in range(5)]
        a, total = solve_assignment(m)
        assert total == oracles.min_assignment(m)
        assert sorted(a) == list(range(5))
        assert total == sum(m[i][a[i]] for i in range(5))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.floats(0, 100, allow_nan=False), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_assignment_matches_scipy(m):
    _, total = solve_assignment(m)
    rows, cols = linear_sum_assignment(np.array(m))
    assert total == pytest.approx(float(np.array(m)[rows, cols].sum()), abs=1e-9)


def test_cost_matrix_orientation():
    cm = cost_matrix({(0, 0), (2, 2)}, {(0, 1), (5, 5)}, Metric.MANHATTAN)
    assert cm.tolist() == [[1, 10], [3, 6]]


@pytest.mark.parametrize("name", ["L04", "L06", "L10"])
def test_dominance_consistency_admissibility(corpus_by_name, name):
    lv = corpus_by_name[name]
    parsed = oracles.parse(serialize_level(lv))
    edges = oracles.reachable(parsed)
    dist = oracles.distances_to_goal(edges, parsed[1])
    g = lv.grid
    for (player, boxes), out in edges.items():
        s = State(player, boxes)
        h = {k: evaluate(k, s, g) for k in HeuristicKind}
        assert h[HeuristicKind.HUNGARIAN_MANHATTAN] >= h[HeuristicKind.GREEDY_MANHATTAN]
        assert h[HeuristicKind.HUNGARIAN_EUCLID] >= h[HeuristicKind.GREEDY_EUCLID] - 1e-9
        assert h[HeuristicKind.GREEDY_MANHATTAN] >= h[HeuristicKind.GREEDY_EUCLID] - 1e-9
        assert h[HeuristicKind.HUNGARIAN_MANHATTAN] >= h[HeuristicKind.HUNGARIAN_EUCLID] - 1e-9
        d = dist[(player, boxes)]
        if d is not None:
            assert h[HeuristicKind.HUNGARIAN_MANHATTAN] <= d
        for _, t in out:
            ht = evaluate(HeuristicKind.GREEDY_MANHATTAN, State(*t), g)
            assert abs(h[HeuristicKind.GREEDY_MANHATTAN] - ht) <= 1


def test_kind_parse():
    assert HeuristicKind.parse("Hungarian-Manhattan") is HeuristicKind.HUNGARIAN_MANHATTAN
    assert HeuristicKind.HUNGARIAN_EUCLID.metric is Metric.EUCLID
    with pytest.raises(ValueError):
        HeuristicKind.parse("pdb")
    assert len(HeuristicKind) == 4
