import json
from collections import Counter

import numpy as np
import oracles
import pytest

from sokosearch.bench import OracleInfeasible
from sokosearch.dataset import (
    BOX,
    BOX_ON_GOAL,
    EXTERIOR,
    FLOOR,
    GOAL,
    PLAYER,
    PLAYER_ON_GOAL,
    SIZE,
    WALL,
    EncodingOverflow,
    Sample,
    augment,
    build_dataset,
    decode_state,
    encode_state,
    label_states,
    make_samples,
    transform_encoding,
    write_dataset,
)
from sokosearch.geometry import Direction, Symmetry
from sokosearch.levels import parse_level, serialize_level, transform_level
from sokosearch.search import SearchLimits
from sokosearch.state import State, apply_move, is_goal

from conftest import BIG, TINY


def test_encode_tiny():
    lv = parse_level(TINY)
    enc = encode_state(State.initial(lv), lv.grid)
    assert enc.shape == (SIZE, SIZE)
    assert enc[0, :5].tolist() == [WALL] * 5
    assert enc[1, :5].tolist() == [WALL, PLAYER, BOX, GOAL, WALL]
    assert enc[1, 5] == EXTERIOR and enc[3, 0] == EXTERIOR
    assert (enc != EXTERIOR).sum() == 15


def test_encode_goal_overlays():
    lv = parse_level("######\n#+$ *#\n#  $.#\n######")
    enc = encode_state(State.initial(lv), lv.grid)
    assert enc[1, 1] == PLAYER_ON_GOAL
    assert enc[1, 4] == BOX_ON_GOAL
    assert enc[2, 1] == FLOOR


def test_encoding_overflow():
    row = "#" * 33
    lv = parse_level("\n".join([row, "#@$." + " " * 28 + "#", row]))
    with pytest.raises(EncodingOverflow):
        encode_state(State.initial(lv), lv.grid)


def test_decode_inverts_encode(corpus):
    for lv in corpus:
        s = State.initial(lv)
        grid, s2 = decode_state(encode_state(s, lv.grid))
        assert grid == lv.grid and s2 == s


def test_sample_line_round_trip():
    lv = parse_level(TINY)
    smp = Sample(encode_state(State.initial(lv), lv.grid), Direction.R)
    line = smp.line()
    assert len(line) == SIZE * SIZE + 2 and line.endswith("\tR")
    back = Sample.from_line(line + "\n")
    assert np.array_equal(back.encoding, smp.encoding) and back.label is Direction.R


def test_tiny_label():
    lv = parse_level(TINY)
    assert [(s, m.direction) for s, m in label_states(lv)] == [(State.initial(lv), Direction.R)]


def test_goal_and_dead_states_excluded(corpus_by_name):
    lv = corpus_by_name["L04"]
    labelled = label_states(lv)
    assert labelled
    for s, _ in labelled:
        assert not is_goal(s, lv.grid)
    assert label_states(corpus_by_name["L12"]) == []


@pytest.mark.parametrize("name", ["L03", "L04", "L10"])
def test_labels_match_oracle(corpus_by_name, name):
    lv = corpus_by_name[name]
    parsed = oracles.parse(serialize_level(lv))
    dist = oracles.distances_to_goal(oracles.reachable(parsed), parsed[1])
    labelled = label_states(lv)
    live = {s for s, d in dist.items() if d}
    # every labelled state is solvable and the label starts an optimal path
    assert {(s.player, s.boxes) for s, _ in labelled} <= live
    for s, m in labelled:
        path = oracles.bfs_path(parsed, start=(s.player, s.boxes))
        assert m.direction.name == path[0]
        t = apply_move(s, m, lv.grid)
        assert dist[(t.player, t.boxes)] == dist[(s.player, s.boxes)] - 1


def test_label_cap():
    with pytest.raises(OracleInfeasible):
        label_states(parse_level(BIG), SearchLimits(max_nodes=100))


def test_rot90_encoding_and_label():
    lv = parse_level(TINY)
    enc = encode_state(State.initial(lv), lv.grid)
    rot = transform_encoding(enc, Symmetry.ROT90)
    lv90 = transform_level(lv, Symmetry.ROT90)
    assert np.array_equal(rot, encode_state(State.initial(lv90), lv90.grid))
    aug = dict(zip(Symmetry, augment([Sample(enc, Direction.R)])))
    assert np.array_equal(aug[Symmetry.ROT90].encoding, rot)
    assert aug[Symmetry.ROT90].label is Direction.D


def test_augment_eightfold_and_equivariant(corpus_by_name):
    lv = corpus_by_name["L06"]
    base = make_samples(lv)[:15]
    aug = augment(base)
    assert len(aug) == 8 * len(base)
    for i, smp in enumerate(base):
        for j, s in enumerate(Symmetry):
            a = aug[8 * i + j]
            assert a.label is s.map_direction(smp.label)
            grid, state = decode_state(a.encoding)
            # the mapped label is still an optimal first move on the mapped board
            text = serialize_level(type(lv)(grid, state.player, state.boxes))
            assert _optimal(text, a.label.name)


def _optimal(text, move):
    parsed = oracles.parse(text)
    dist = oracles.distances_to_goal(oracles.reachable(parsed), parsed[1])
    s0 = (parsed[2], parsed[3])
    for name, t, _ in oracles.neighbours(parsed[0], s0):
        if name == move:
            return dist[t] == dist[s0] - 1
    return False


def test_transform_encoding_inverse(corpus_by_name):
    lv = corpus_by_name["L09"]
    enc = encode_state(State.initial(lv), lv.grid)
    for s in Symmetry:
        assert np.array_equal(transform_encoding(transform_encoding(enc, s), s.inverse), enc)


def test_write_split_and_manifest(tmp_path):
    lv = parse_level(TINY)
    samples = [Sample(encode_state(State.initial(lv), lv.grid), Direction.R, "tiny")] * 100
    m = write_dataset(samples, tmp_path, split=0.1, seed=3)
    assert (m.train_count, m.test_count) == (90, 10)
    train = (tmp_path / "train.tsv").read_text().splitlines()
    test = (tmp_path / "test.tsv").read_text().splitlines()
    assert (len(train), len(test)) == (90, 10)
    data = json.loads((tmp_path / "manifest.json").read_text())
    assert data["sample_count"] == 100 and data["label_counts"]["R"] == 100
    with pytest.raises(ValueError):
        write_dataset(samples, tmp_path, split=1.0)


def test_same_seed_identical_files(tmp_path, corpus_by_name):
    levels = [corpus_by_name["L03"], corpus_by_name["L05"]]
    build_dataset(levels, tmp_path / "a", seed=11)
    build_dataset(levels, tmp_path / "b", seed=11)
    build_dataset(levels, tmp_path / "c", seed=12)
    for f in ("train.tsv", "test.tsv", "manifest.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    assert (tmp_path / "a" / "train.tsv").read_bytes() != (tmp_path / "c" / "train.tsv").read_bytes()


def test_build_dataset_balance(tmp_path, corpus_by_name):
    levels = [corpus_by_name[n] for n in ("L03", "L04", "L06")]
    m = build_dataset(levels, tmp_path)
    base = sum(len(label_states(lv)) for lv in levels)
    assert m.base_count == base and m.sample_count == 8 * base and m.augmentation_factor == 8
    assert set(m.label_counts.values()) == {2 * base}
    assert m.source_levels == ["L03", "L04", "L06"]
    lines = (tmp_path / "train.tsv").read_text().splitlines() + (tmp_path / "test.tsv").read_text().splitlines()
    assert Counter(line[-1] for line in lines) == {d: 2 * base for d in "UDLR"}
    assert all(set(line[:-2]) <= set("01234567") for line in lines)
