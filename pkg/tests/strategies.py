"""Hypothesis strategies for small instances."""
from __future__ import annotations

from hypothesis import strategies as st

from listcolor.core import Instance


@st.composite
def instances(draw, max_parts=3, max_size=3, max_pot=5, max_vertices=8):
    pot = draw(st.integers(1, max_pot))
    k = draw(st.integers(1, max_parts))
    parts = []
    total = 0
    for _ in range(k):
        size = draw(st.integers(1, max_size))
        size = max(1, min(size, max_vertices - total - (k - len(parts) - 1)))
        total += size
        parts.append(tuple(draw(st.integers(1, (1 << pot) - 1)) for _ in range(size)))
    return Instance(pot, tuple(parts))


def as_sets(inst: Instance) -> list[list[set[int]]]:
    return [[{c for c in range(inst.pot) if m >> c & 1} for m in p] for p in inst.parts]
