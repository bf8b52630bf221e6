from __future__ import annotations

import pytest

from listcolor.colorability import decide_colorable
from listcolor.core import l_formula, popcount
from listcolor.lowerbound import (banned_columns_ok, equitable_blocks, example1, example2,
                                  gen_example1, gen_example2)
from oracles import colorable
from strategies import as_sets


def test_equitable_blocks_partition():
    blocks = equitable_blocks(7, 3)
    assert sum(popcount(b) for b in blocks) == 7
    assert sorted(popcount(b) for b in blocks) == [2, 2, 3]
    acc = 0
    for b in blocks:
        assert acc & b == 0
        acc |= b


@pytest.mark.parametrize("s,k", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_example1_shape_sizes(s, k):
    spec = example1(s, k)
    inst = spec.instance
    assert inst.shape == (s,) * k and inst.pot_size == 2 * k - 1
    assert min(popcount(m) for p in inst.parts for m in p) >= l_formula(s, k) - 1
    assert spec.claimed_size == l_formula(s, k) - 1
    assert banned_columns_ok(inst, 1)


@pytest.mark.parametrize("s,k", [(2, 2), (3, 2), (2, 3)])
def test_example1_uncolorable_by_oracle(s, k):
    assert not colorable(as_sets(gen_example1(s, k)))


def test_example2_structure():
    inst = gen_example2(2)
    assert inst.shape == (15, 15) and inst.pot_size == 5
    assert min(popcount(m) for p in inst.parts for m in p) >= 3
    assert banned_columns_ok(inst, 2)
    assert decide_colorable(inst) is None
    with pytest.raises(ValueError):
        example2(3)


def test_bad_parameters():
    with pytest.raises(ValueError):
        example1(1, 3)
    with pytest.raises(ValueError):
        example1(3, 1)
