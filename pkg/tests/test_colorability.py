from __future__ import annotations

from hypothesis import given, settings

from listcolor.colorability import brute_force_colorable, check_coloring, decide_colorable
from listcolor.core import Instance
from oracles import colorable
from strategies import as_sets, instances


@settings(max_examples=300, deadline=None)
@given(instances(max_parts=4, max_size=3, max_pot=6))
def test_decide_matches_oracle(inst):
    col = decide_colorable(inst)
    truth = colorable(as_sets(inst))
    assert (col is not None) == truth
    assert brute_force_colorable(inst) == truth
    if col is not None:
        assert check_coloring(inst, col)


def test_check_coloring_reports():
    inst = Instance.from_lists([[[0, 1]], [[0, 1]]], pot=2)
    assert check_coloring(inst, {(0, 0): 0, (1, 0): 1})
    assert not check_coloring(inst, {(0, 0): 0, (1, 0): 0})
    assert not check_coloring(inst, {(0, 0): 0})
    bad = check_coloring(inst, {(0, 0): 0, (1, 0): 2})
    assert not bad and "outside" in bad.violation


def test_same_part_may_share():
    inst = Instance.from_lists([[[0], [0]], [[1]]], pot=2)
    assert decide_colorable(inst) == {(0, 0): 0, (0, 1): 0, (1, 0): 1}
