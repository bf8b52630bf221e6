"""Pure-Python game solver; the reference the compiled kernel is checked against."""
from __future__ import annotations

import sys

from .game import ALICE_WON, BOB_WON, Position, _column_choices, canonicalize_position


class PyKernel:
    """Memoized AND/OR search. ``solve`` returns True when Alice wins."""

    name = "python"

    def __init__(self):
        self.memo: dict[Position, bool] = {}

    def __len__(self):
        return len(self.memo)

    def clear(self):
        self.memo.clear()

    def items(self):
        return iter(self.memo.items())

    def insert(self, pos: Position, value: bool):
        self.memo[pos] = bool(value)

    def lookup(self, pos: Position):
        return self.memo.get(pos)

    def solve(self, pos: Position) -> bool:
        pos = canonicalize_position(pos)
        if pos == ALICE_WON:
            return True
        limit = sys.getrecursionlimit()
        need = sum(sum(c) for c in pos) + len(pos) + 100
        if need > limit:
            sys.setrecursionlimit(need)
        return self._solve(pos)

    def _solve(self, pos: Position) -> bool:
        if not pos:
            return False
        got = self.memo.get(pos)
        if got is not None:
            return got
        choices = [_column_choices(c) for c in pos]
        ncol = len(pos)
        idx = [0] * ncol
        result = False
        while True:
            # odometer over per-column choices
            j = 0
            while j < ncol:
                idx[j] += 1
                if idx[j] < len(choices[j]):
                    break
                idx[j] = 0
                j += 1
            if j == ncol:
                break
            mv = [choices[c][idx[c]] for c in range(ncol)]
            ones = [c for c in range(ncol) if mv[c] and mv[c][-1] == 1]
            if len(ones) >= 2:
                result = True
                break
            win = True
            for c in range(ncol):
                if not mv[c]:
                    continue
                if ones and ones[0] != c:
                    continue  # a presented budget-1 vertex survives
                cols = []
                for d in range(ncol):
                    col = list(pos[d])
                    for b in mv[d]:
                        col.remove(b)
                    if d != c:
                        col.extend(b - 1 for b in mv[d])
                    if col:
                        cols.append(tuple(sorted(col, reverse=True)))
                nxt = tuple(sorted(cols, reverse=True))
                if not nxt or not self._solve(nxt):
                    win = False
                    break
            if win:
                result = True
                break
        self.memo[pos] = result
        return result


__all__ = ["PyKernel", "BOB_WON"]
