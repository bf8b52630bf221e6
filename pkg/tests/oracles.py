"""Slow, obviously-correct reference implementations used only by tests.

Nothing here imports the search code it is checked against.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product


def l_value(s: int, k: int) -> int:
    return math.ceil(Fraction(2 * (s - 1) * k - s + 2, s))


def colorable(parts: list[list[set[int]]]) -> bool:
    """Try every choice of one color per vertex."""
    verts = [(i, lst) for i, part in enumerate(parts) for lst in part]
    for combo in product(*[sorted(lst) for _, lst in verts]):
        owner = {}
        if all(owner.setdefault(c, i) == i for (i, _), c in zip(verts, combo)):
            return True
    return False


def has_sdr(sets: list[set[int]]) -> bool:
    """Search injections directly over the union."""
    colors = sorted(set().union(*sets)) if sets else []
    if len(colors) < len(sets):
        return False
    for perm in permutations(colors, len(sets)):
        if all(c in s for c, s in zip(perm, sets)):
            return True
    return False


def brute_choosable(shape, demand, pot: int) -> bool:
    """Every assignment of lists of the demanded sizes from range(pot) colors."""
    verts = [(i, demand[i][j]) for i, s in enumerate(shape) for j in range(s)]
    options = [list(combinations(range(pot), d)) for _, d in verts]
    for lists in product(*options):
        parts: list[list[set[int]]] = [[] for _ in shape]
        for (i, _), lst in zip(verts, lists):
            parts[i].append(set(lst))
        if not colorable(parts):
            return False
    return True


def brute_canonical(pot: int, parts: list[list[int]]):
    """Least relabeled form over every color permutation."""
    best = None
    for perm in permutations(range(pot)):
        form = []
        for p in parts:
            lists = sorted(tuple(sorted(perm[c] for c in range(pot) if m >> c & 1)) for m in p)
            form.append((len(p), tuple(lists)))
        form = tuple(sorted(form))
        if best is None or form < best:
            best = form
    return best


def paint_alice_wins(budgets: list[list[int]]) -> bool:
    """Labelled paint game: vertices are (part, index) with explicit budgets.

    Alice picks any nonempty set of uncolored vertices; Bob colors all the
    presented vertices of one part; presented uncolored vertices lose a token.
    """
    start = tuple((i, j, b) for i, col in enumerate(budgets) for j, b in enumerate(col))

    @lru_cache(maxsize=None)
    def alice(state) -> bool:
        if not state:
            return False
        if any(b == 0 for _, _, b in state):
            return True
        n = len(state)
        for mask in range(1, 1 << n):
            shown = [state[t] for t in range(n) if mask >> t & 1]
            parts = {i for i, _, _ in shown}
            bob_escapes = False
            for p in parts:
                nxt = []
                for t, v in enumerate(state):
                    if mask >> t & 1:
                        if v[0] == p:
                            continue
                        nxt.append((v[0], v[1], v[2] - 1))
                    else:
                        nxt.append(v)
                if not alice(tuple(nxt)):
                    bob_escapes = True
                    break
            if not bob_escapes:
                return True
        return False

    return alice(start)
