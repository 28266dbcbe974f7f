import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sokosearch.geometry import DIRECTIONS, Direction, Move
from sokosearch.levels import parse_level, serialize_level
from sokosearch.state import (
    IllegalMove,
    State,
    apply_move,
    is_goal,
    legal_moves,
    render,
    replay,
    state_key,
)

from conftest import TINY


def dirs(moves):
    return [m.direction for m in moves]


def test_legal_moves_tiny():
    lv = parse_level(TINY)
    s = State.initial(lv)
    assert legal_moves(s, lv.grid) == [Move(Direction.R, True)]


def test_legal_moves_open_room():
    lv = parse_level("#####\n#   #\n# @ #\n# $.#\n#####")
    s = State(lv.initial_player, frozenset())
    assert dirs(legal_moves(s, lv.grid)) == [Direction.U, Direction.D, Direction.L, Direction.R]


def test_push_into_wall_excluded():
    lv = parse_level("######\n#  @$#\n#  . #\n######")
    assert Direction.R not in dirs(legal_moves(State.initial(lv), lv.grid))


def test_push_into_box_excluded():
    lv = parse_level("#######\n#@$$..#\n#######")
    assert legal_moves(State.initial(lv), lv.grid) == []


def test_apply_push():
    lv = parse_level(TINY)
    s = apply_move(State.initial(lv), Move(Direction.R), lv.grid)
    assert s.player == (1, 2) and s.boxes == {(1, 3)}


def test_apply_plain_and_reverse():
    lv = parse_level("#####\n#   #\n# @ #\n# $.#\n#####")
    s0 = State.initial(lv)
    s1 = apply_move(s0, Direction.U, lv.grid)
    assert s1.player == (1, 2) and s1.boxes == s0.boxes
    assert apply_move(s1, Direction.D, lv.grid) == s0


def test_illegal_move_raises():
    lv = parse_level(TINY)
    with pytest.raises(IllegalMove):
        apply_move(State.initial(lv), Direction.L, lv.grid)


def test_is_goal():
    lv = parse_level(TINY)
    g = lv.grid
    assert is_goal(State((1, 2), frozenset({(1, 3)})), g)
    assert not is_goal(State((1, 1), frozenset({(1, 2)})), g)
    two = parse_level("######\n#@$*.#\n######")
    assert not is_goal(State.initial(two), two.grid)


def test_state_key():
    a = State((1, 1), frozenset([(2, 2), (3, 3)]))
    b = State((1, 1), frozenset([(3, 3), (2, 2)]))
    c = State((1, 2), frozenset([(2, 2), (3, 3)]))
    assert state_key(a) == state_key(a) == state_key(b)
    assert state_key(a) != state_key(c)
    assert state_key(a) == ((1, 1), ((2, 2), (3, 3)))


def test_render():
    lv = parse_level(TINY)
    s0 = State.initial(lv)
    assert render(s0, lv.grid) == serialize_level(lv)
    s1 = apply_move(s0, Direction.R, lv.grid)
    assert render(s1, lv.grid) == "#####\n# @*#\n#####"


def test_render_solved_corpus(corpus):
    import oracles

    for lv in corpus:
        final = replay(lv, oracles.bfs_path(serialize_level(lv)))[-1]
        text = render(final, lv.grid).split("\n")
        for r, c in lv.grid.goals:
            assert text[r][c] in "*+"


def test_replay_lowercase_and_error_index():
    lv = parse_level("######\n#@$ .#\n######")
    assert is_goal(replay(lv, "rr")[-1], lv.grid)
    with pytest.raises(IllegalMove) as info:
        replay(lv, "RRR")
    assert info.value.step == 3


# properties over random walks on corpus levels -------------------------------


@settings(max_examples=60, deadline=None)
@given(idx=st.integers(0, 13), walk=st.lists(st.sampled_from(DIRECTIONS), max_size=40))
def test_move_appension_soundness(corpus, idx, walk):
    lv = corpus[idx]
    g = lv.grid
    s = State.initial(lv)
    n = len(s.boxes)
    for d in walk:
        legal = legal_moves(s, g)
        for m in legal:
            apply_move(s, m, g)
        for d2 in set(DIRECTIONS) - {m.direction for m in legal}:
            with pytest.raises(IllegalMove):
                apply_move(s, d2, g)
        if d in {m.direction for m in legal}:
            nxt = apply_move(s, d, g)
            pushed = d.step(s.player) in s.boxes
            if not pushed:
                assert apply_move(nxt, d.opposite, g) == s
            else:
                # a push is never undone by one move
                for m in legal_moves(nxt, g):
                    assert apply_move(nxt, m, g) != s
            s = nxt
        assert len(s.boxes) == n
        assert s.player not in s.boxes
        assert s.boxes <= g.floor and s.player in g.floor


def test_key_injective_on_random_states():
    rng = random.Random(7)
    cells = [(r, c) for r in range(12) for c in range(12)]
    states = set()
    while len(states) < 10_000:
        picks = rng.sample(cells, 4)
        states.add(State(picks[0], frozenset(picks[1:])))
    assert len({state_key(s) for s in states}) == 10_000
