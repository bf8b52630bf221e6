"""Exact L-colorability of complete multipartite instances."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import Coloring, Instance, colors_of


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violation: str | None = None

    def __bool__(self):
        return self.ok


def check_coloring(inst: Instance, col: Coloring) -> CheckResult:
    """Membership and properness; properness means no color crosses parts."""
    owner: dict[int, int] = {}
    for i, part in enumerate(inst.parts):
        for j, m in enumerate(part):
            if (i, j) not in col:
                return CheckResult(False, f"vertex {(i, j)} is uncolored")
            c = col[(i, j)]
            if not (isinstance(c, int) and c >= 0 and m >> c & 1):
                return CheckResult(False, f"vertex {(i, j)} got color {c} outside its list")
            other = owner.setdefault(c, i)
            if other != i:
                return CheckResult(False, f"color {c} used in parts {other} and {i}")
    extra = set(col) - set(inst.vertices())
    if extra:
        return CheckResult(False, f"unknown vertices {sorted(extra)}")
    return CheckResult(True)


def decide_colorable(inst: Instance) -> Coloring | None:
    """Return an L-coloring, or ``None`` if none exists.

    Each color class sits inside one part, so choosing color ``c`` for a
    vertex of part X hands ``c`` to X: it colors every pending vertex of X
    whose list holds ``c`` and leaves every other part's lists. The pending
    lists alone therefore determine the rest of the search, and failed
    states are memoized on them.
    """
    pending = [
        [(m, (i, j)) for j, m in enumerate(part)]
        for i, part in enumerate(inst.parts)
    ]
    failed: set = set()
    out: Coloring = {}

    def key(state):
        return tuple(tuple(sorted({m for m, _ in p})) for p in state)

    def solve(state) -> bool:
        if all(not p for p in state):
            return True
        # fail-first: fewest feasible colors, ties by part then slot
        best = None
        for i, p in enumerate(state):
            for m, v in p:
                cnt = bin(m).count("1")
                if cnt == 0:
                    return False
                cand = (cnt, v)
                if best is None or cand < best[0]:
                    best = (cand, i, m)
        k = key(state)
        if k in failed:
            return False
        _, i, m = best
        seen_sigs = set()
        for c in colors_of(m):
            # colors with identical incidence on pending vertices are interchangeable
            sig = tuple(tuple(mm >> c & 1 for mm, _ in p) for p in state)
            if sig in seen_sigs:
                continue
            seen_sigs.add(sig)
            bit = 1 << c
            nxt = []
            taken = []
            for t, p in enumerate(state):
                if t == i:
                    keep = []
                    for mm, v in p:
                        if mm & bit:
                            taken.append(v)
                        else:
                            keep.append((mm, v))
                    nxt.append(keep)
                else:
                    nxt.append([(mm & ~bit, v) for mm, v in p])
            if solve(nxt):
                for v in taken:
                    out[v] = c
                return True
        failed.add(k)
        return False

    if solve(pending):
        return dict(sorted(out.items()))
    return None


def brute_force_colorable(inst: Instance) -> bool:
    """Exhaustive oracle over all list-respecting assignments."""
    verts = inst.vertices()
    choices = [colors_of(inst.parts[i][j]) for i, j in verts]
    for combo in product(*choices):
        owner = {}
        ok = True
        for (i, _), c in zip(verts, combo):
            if owner.setdefault(c, i) != i:
                ok = False
                break
        if ok:
            return True
    return False
