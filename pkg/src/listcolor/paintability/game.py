"""Positions, moves and responses of the paint game on complete multipartite graphs.

A position is a tuple of columns, one per part that still has uncolored
vertices. A column lists the remaining presentation budgets of those
vertices. Presenting a vertex costs one unit of budget unless Bob colors
it. Bob colors every presented vertex of one part; a vertex left with
budget 0 means Alice wins. The empty position is a win for Bob.
"""
from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Iterable, Sequence

Column = tuple[int, ...]
Position = tuple[Column, ...]
Move = tuple[Column, ...]

ALICE_WON: Position = ((0,),)
BOB_WON: Position = ()


def canonicalize_position(pos: Iterable[Iterable[int]]) -> Position:
    """Columns sorted descending, then ordered descending; empty columns dropped."""
    cols = [tuple(sorted((int(b) for b in c), reverse=True)) for c in pos]
    cols = [c for c in cols if c]
    if any(b < 0 for c in cols for b in c):
        raise ValueError("budgets must be nonnegative")
    if any(b == 0 for c in cols for b in c):
        return ALICE_WON
    return tuple(sorted(cols, reverse=True))


def uniform_position(shape: Sequence[int], t: int) -> Position:
    return canonicalize_position([[t] * s for s in shape])


def demand_position(demand: Sequence[Sequence[int]]) -> Position:
    return canonicalize_position(demand)


def is_terminal(pos: Position) -> bool:
    return pos == BOB_WON or pos == ALICE_WON


def _column_choices(col: Column) -> list[Column]:
    """Distinct sub-multisets of a column, largest-first within each value."""
    counts = sorted(Counter(col).items(), reverse=True)
    out = []
    for pick in product(*[range(c + 1) for _, c in counts]):
        sub = []
        for (v, _), n in zip(counts, pick):
            sub.extend([v] * n)
        out.append(tuple(sub))
    return out


def alice_moves(pos: Position) -> list[Move]:
    """Every nonempty presentation, equal budgets within a column identified."""
    if is_terminal(pos):
        return []
    moves = []
    for mv in product(*[_column_choices(c) for c in pos]):
        if any(mv):
            moves.append(tuple(mv))
    return moves


def _minus(col: Column, sub: Column) -> list[int]:
    left = Counter(col)
    left.subtract(sub)
    if any(n < 0 for n in left.values()):
        raise ValueError(f"{sub} is not a sub-multiset of {col}")
    return [v for v, n in left.items() for _ in range(n)]


def validate_move(pos: Position, mv: Move) -> None:
    if len(mv) != len(pos):
        raise ValueError("move must give one entry per column")
    for col, sub in zip(pos, mv):
        _minus(col, sub)
    if not any(mv):
        raise ValueError("Alice must present at least one vertex")


def response(pos: Position, mv: Move, part: int) -> Position:
    """Successor when Bob colors the presented vertices of column ``part``."""
    cols = []
    for i, (col, sub) in enumerate(zip(pos, mv)):
        rest = _minus(col, sub)
        if i != part:
            rest += [b - 1 for b in sub]
        cols.append(rest)
    return canonicalize_position(cols)


def bob_responses(pos: Position, mv: Move) -> list[Position]:
    """Distinct successors, one per part that has a presented vertex."""
    validate_move(pos, mv)
    out = []
    for i, sub in enumerate(mv):
        if sub:
            nxt = response(pos, mv, i)
            if nxt not in out:
                out.append(nxt)
    return out


def response_parts(pos: Position, mv: Move) -> list[tuple[int, Position]]:
    """Like ``bob_responses`` but keeps the first column index giving each successor."""
    seen = []
    out = []
    for i, sub in enumerate(mv):
        if sub:
            nxt = response(pos, mv, i)
            if nxt not in seen:
                seen.append(nxt)
                out.append((i, nxt))
    return out


# ---------------------------------------------------------------- byte keys

def encode_position(pos: Position) -> bytes:
    """Budgets as bytes, each column closed by a zero byte."""
    out = bytearray()
    for col in pos:
        if any(b > 255 for b in col):
            raise ValueError("budgets above 255 are not supported")
        out.extend(col)
        out.append(0)
    return bytes(out)


def decode_position(key: bytes) -> Position:
    cols = []
    cur: list[int] = []
    for b in key:
        if b == 0:
            cols.append(tuple(cur))
            cur = []
        else:
            cur.append(b)
    return tuple(cols)
