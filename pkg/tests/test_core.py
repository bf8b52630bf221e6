from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listcolor.core import (Instance, ScheduleViolation, ShapeError, canonical_form,
                            canonicalize_instance, colors_of, format_shape, l_formula, mask_of,
                            parse_shape, part_stats, strip_common_parts)
from oracles import brute_canonical, l_value
from strategies import instances


def test_parse_shape_forms():
    assert parse_shape("4*3") == (4, 4, 4)
    assert parse_shape(" 2, 2,3 ") == (2, 2, 3)
    assert format_shape((4, 4, 4)) == "4*3"
    assert format_shape((2, 2, 3)) == "2,2,3"


@pytest.mark.parametrize("bad", ["", "0,2", "3*0", "a", "2;3", "-1"])
def test_parse_shape_rejects(bad):
    with pytest.raises(ShapeError):
        parse_shape(bad)


@given(st.integers(2, 12), st.integers(1, 200))
def test_l_formula_matches_exact_fraction(s, k):
    assert l_formula(s, k) == l_value(s, k)


def test_l_formula_small_values():
    assert [l_formula(4, k) for k in range(1, 7)] == [1, 3, 4, 6, 7, 9]
    assert [l_formula(3, k) for k in range(1, 7)] == [1, 3, 4, 5, 7, 8]
    with pytest.raises(ValueError):
        l_formula(1, 3)


def test_instance_rejects_empty_and_out_of_pot():
    with pytest.raises(ValueError):
        Instance(3, ((0b001, 0),))
    with pytest.raises(ValueError):
        Instance(2, ((0b100,),))


@given(instances())
def test_json_round_trip(inst):
    assert Instance.from_json(inst.to_json()) == inst


def test_part_stats_counts():
    inst = Instance.from_lists([[[0, 1], [1, 2], [1, 3]]], pot=4)
    st_ = part_stats(inst, 0)
    assert st_.multiplicity(1) == 3 and st_.multiplicity(0) == 1
    assert st_.holders(1) == (0, 1, 2)
    assert st_.n[1] == 3 and st_.n[3] == 1
    assert colors_of(st_.L((0, 1))) == (1,)


def _shuffle(inst: Instance, rng: random.Random) -> Instance:
    perm = list(range(inst.pot))
    rng.shuffle(perm)
    parts = []
    for p in inst.parts:
        lists = [mask_of(perm[c] for c in colors_of(m)) for m in p]
        rng.shuffle(lists)
        parts.append(tuple(lists))
    rng.shuffle(parts)
    return Instance(inst.pot, tuple(parts))


@settings(max_examples=60, deadline=None)
@given(instances(max_pot=5), st.integers(0, 10**6))
def test_canonical_form_invariant(inst, seed):
    other = _shuffle(inst, random.Random(seed))
    assert canonical_form(inst) == canonical_form(other)
    assert canonical_form(canonicalize_instance(inst)) == canonical_form(inst)


@settings(max_examples=40, deadline=None)
@given(instances(max_parts=2, max_size=2, max_pot=4), instances(max_parts=2, max_size=2, max_pot=4))
def test_canonical_form_matches_brute_force(a, b):
    def brute(x):
        return brute_canonical(x.pot, [list(p) for p in x.parts])

    if a.pot == b.pot:
        assert (canonical_form(a) == canonical_form(b)) == (brute(a) == brute(b))


def test_strip_common_parts_colors_and_reports():
    inst = Instance.from_lists([[[0, 1], [0, 2]], [[0, 1], [1, 2]], [[1, 2], [2, 3]]], pot=4)
    res = strip_common_parts(inst)
    residual, coloring = res
    # removing colors 0 and 1 leaves part 2 sharing color 2
    assert coloring == {(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 1, (2, 0): 2, (2, 1): 2}
    assert residual is None and res.kept == ()

    inst = Instance.from_lists([[[0, 1], [0, 2]], [[1, 2], [2, 3]], [[1, 3], [2, 4]]], pot=5)
    res = strip_common_parts(inst)
    assert res.kept == (2,)
    assert res.residual.parts == ((0b01010, 0b10000),)


def test_strip_schedule_violation():
    inst = Instance.from_lists([[[0, 1], [0, 2]], [[0, 3], [1, 3]]], pot=4)
    with pytest.raises(ScheduleViolation):
        strip_common_parts(inst, sizes=(2, 2))


@given(instances())
def test_strip_leaves_no_common_color(inst):
    try:
        res = strip_common_parts(inst)
    except ScheduleViolation:
        return
    if res.residual is not None:
        for i in range(res.residual.k):
            assert res.residual.part_intersection(i) == 0
    for (i, j), c in res.coloring.items():
        assert inst.parts[i][j] >> c & 1
