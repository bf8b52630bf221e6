"""Adversarial list assignments showing choice-number lower bounds.

Colors are 0-based. The pot is split round-robin: color c goes to block
``c % blocks``. Slot j of every part avoids the blocks assigned to j, so a
color (or pair of colors) is banned from an entire slot column and each part
needs several colors.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Instance, l_formula, mask_of


@dataclass(frozen=True)
class LowerBoundSpec:
    family: str
    s: int
    k: int
    instance: Instance
    claimed_size: int
    """Uniform list size the instance defeats; the choice number exceeds it."""

    def to_json_obj(self) -> dict:
        return {"family": self.family, "s": self.s, "k": self.k,
                "claimed_size": self.claimed_size, "instance": self.instance.to_json_obj()}


def equitable_blocks(pot: int, blocks: int) -> list[int]:
    return [mask_of(c for c in range(pot) if c % blocks == b) for b in range(blocks)]


def example1(s: int, k: int) -> LowerBoundSpec:
    if s < 2 or k < 2:
        raise ValueError("need s >= 2 and k >= 2")
    pot = 2 * k - 1
    full = (1 << pot) - 1
    blocks = equitable_blocks(pot, s)
    part = tuple(full & ~blocks[j] for j in range(s))
    inst = Instance(pot, (part,) * k)
    need = l_formula(s, k) - 1
    assert all(bin(m).count("1") >= need for m in part), "list below l(s,k)-1"
    return LowerBoundSpec("example1", s, k, inst, need)


def example2(k: int) -> LowerBoundSpec:
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    s = 15
    pot = 3 * k - 1
    full = (1 << pot) - 1
    blocks = equitable_blocks(pot, 6)
    pairs = list(combinations(range(6), 2))
    part = tuple(full & ~(blocks[a] | blocks[b]) for a, b in pairs)
    inst = Instance(pot, (part,) * k)
    assert all(bin(m).count("1") >= 2 * k - 1 for m in part), "list below 2k-1"
    return LowerBoundSpec("example2", s, k, inst, 2 * k - 1)


def gen_example1(s: int, k: int) -> Instance:
    return example1(s, k).instance


def gen_example2(k: int) -> Instance:
    return example2(k).instance


def banned_columns_ok(inst: Instance, width: int) -> bool:
    """Every ``width`` colors are missing from all lists of some slot column."""
    s = len(inst.parts[0])
    for cs in combinations(range(inst.pot), width):
        bits = mask_of(cs)
        if not any(all(p[j] & bits == 0 for p in inst.parts) for j in range(s)):
            return False
    return True
