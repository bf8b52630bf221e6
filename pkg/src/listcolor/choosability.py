"""Exact f-choosability of complete multipartite graphs.

An assignment is colorable iff every part X can be given its own set of
colors S_X hitting every list of X, with the S_X pairwise disjoint. So only
the family of hitting sets of each part matters. For every part we
enumerate all list tuples over a pot of ``pot_bound`` colors and keep one
witness per distinct hitting family. Families are bitmasks over the
``2**pot`` color subsets, and the search ranges over tuples of distinct
families.

Color symmetry is broken on one anchor part. Its two first vertices get
lists ``{0..d1-1}`` and ``{0..j-1} + {d1..d1+d2-j-1}``, and every
assignment can be relabeled into this form. Parts with equal demand
vectors (other than the anchor) are visited in nondecreasing family order.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Mapping, Sequence

from .colorability import decide_colorable
from .core import Instance, Shape, mask_of, validate_shape

log = logging.getLogger(__name__)

Demand = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BadAssignmentCertificate:
    """A list assignment with exact demanded sizes that admits no coloring."""

    instance: Instance
    demand: Demand
    pot_bound: int
    unsat_verified: bool = True

    def to_json_obj(self) -> dict:
        return {
            "instance": self.instance.to_json_obj(),
            "demand": [list(p) for p in self.demand],
            "pot_bound": self.pot_bound,
            "unsat_verified": self.unsat_verified,
        }


def normalize_demand(shape: Sequence[int], demand) -> Demand:
    shape = validate_shape(shape)
    if isinstance(demand, int):
        out = tuple((demand,) * s for s in shape)
    elif isinstance(demand, Mapping):
        out = tuple(tuple(int(demand[(i, j)]) for j in range(s)) for i, s in enumerate(shape))
    else:
        out = tuple(tuple(int(f) for f in p) for p in demand)
    if tuple(len(p) for p in out) != shape:
        raise ValueError("demand does not match shape")
    if any(f < 1 for p in out for f in p):
        raise ValueError("demands must be positive")
    return out


# ---------------------------------------------------------------- families

@lru_cache(maxsize=None)
def _subset_tables(pot: int):
    nsub = 1 << pot

    @lru_cache(maxsize=None)
    def hits(lst: int) -> int:
        """Subsets meeting ``lst``."""
        bits = 0
        for S in range(nsub):
            if S & lst:
                bits |= 1 << S
        return bits

    @lru_cache(maxsize=None)
    def misses(lst: int) -> int:
        """Subsets not containing ``lst``; their complements meet ``lst``."""
        bits = 0
        for S in range(nsub):
            if S & lst != lst:
                bits |= 1 << S
        return bits

    return hits, misses


def _minimal_sets(fam: int) -> list[int]:
    """Inclusion-minimal members of an up-closed family."""
    out = []
    S = 0
    f = fam
    while f:
        if f & 1:
            m = S
            minimal = True
            while m:
                low = m & -m
                if fam >> (S ^ low) & 1:
                    minimal = False
                    break
                m ^= low
            if minimal:
                out.append(S)
        f >>= 1
        S += 1
    return out


def _ksubsets(pot: int, d: int) -> list[int]:
    return [mask_of(c) for c in combinations(range(pot), d)]


def _part_tuples(demands: Sequence[int], pot: int, fixed: Sequence[int] = ()):
    """All list tuples for a part, vertices with equal demand taken as a multiset.

    ``fixed`` lists are pinned to the first vertices (anchor symmetry
    breaking); the rest of the demands range freely.
    """
    rest = list(demands[len(fixed):])
    groups: dict[int, int] = {}
    for d in rest:
        groups[d] = groups.get(d, 0) + 1
    keys = sorted(groups, reverse=True)
    choices = [list(combinations_with_replacement(_ksubsets(pot, d), groups[d])) for d in keys]
    for combo in product(*choices):
        lists = list(fixed)
        for chunk in combo:
            lists.extend(chunk)
        yield tuple(lists)


def _family_table(demands: Sequence[int], pot: int, fixed_options=((),)):
    """Distinct hitting families of a part, each with a witness.

    Entries are ``(family, co_family, lists)`` where ``co_family`` holds the
    complements of the hitting sets.
    """
    hits, misses = _subset_tables(pot)
    seen: dict[int, tuple[int, tuple[int, ...]]] = {}
    for fixed in fixed_options:
        for lists in _part_tuples(demands, pot, fixed):
            fam = co = -1
            for m in lists:
                fam &= hits(m)
                co &= misses(m)
            if fam not in seen:
                seen[fam] = (co, lists)
    return [(f, co, lists) for f, (co, lists) in seen.items()]


def _anchor_options(demands: Sequence[int], pot: int):
    d = list(demands)
    d1 = d[0]
    first = mask_of(range(d1))
    if len(d) == 1:
        return [(first,)]
    d2 = d[1]
    opts = []
    for j in range(max(0, d1 + d2 - pot), min(d1, d2) + 1):
        second = mask_of(range(j)) | mask_of(range(d1, d1 + d2 - j))
        opts.append((first, second))
    return opts


@dataclass
class _Plan:
    pot: int
    order: list[int]            # search position -> original part index
    tables: list[list]          # search position -> [(family, co_family, lists)]
    same_as_prev: list[bool]    # impose nondecreasing index vs previous position
    demand: Demand


def _build_plan(shape: Shape, demand: Demand, pot: int) -> _Plan:
    k = len(shape)
    # anchor: largest part, then largest demand sum
    anchor = max(range(k), key=lambda i: (shape[i], sum(demand[i]), -i))
    others = [i for i in range(k) if i != anchor]
    others.sort(key=lambda i: (sorted(demand[i], reverse=True), i))
    order = [anchor] + others
    cache: dict[tuple[int, ...], list] = {}
    tables = []
    for pos, i in enumerate(order):
        dem = tuple(sorted(demand[i], reverse=True))
        if pos == 0:
            tables.append(_family_table(dem, pot, _anchor_options(dem, pot)))
        else:
            if dem not in cache:
                cache[dem] = _family_table(dem, pot)
            tables.append(cache[dem])
    same = [False] + [
        pos > 1 and sorted(demand[order[pos]]) == sorted(demand[order[pos - 1]])
        for pos in range(1, k)
    ]
    return _Plan(pot, order, tables, same, demand)


def _search(plan: _Plan, anchor_range: range | None = None):
    """Depth-first search for an uncolorable tuple of families.

    Returns the list of chosen table indices (one per search position) or
    ``None``.
    """
    k = len(plan.order)
    min_cache: dict[int, list[int]] = {}

    def mins(f):
        if f not in min_cache:
            min_cache[f] = _minimal_sets(f)
        return min_cache[f]

    anchors = plan.tables[0]
    rng = anchor_range if anchor_range is not None else range(len(anchors))
    if k == 1:
        # a lone part is colorable whenever its family is nonempty
        for a in rng:
            if anchors[a][0] == 0:
                return [a]
        return None

    def dfs(pos, reach: set[int], chosen: list[int]):
        table = plan.tables[pos]
        start = chosen[-1] if plan.same_as_prev[pos] else 0
        if pos == k - 1:
            rbits = 0
            for T in reach:
                rbits |= 1 << T
            for idx in range(start, len(table)):
                # colorable iff some reachable union is disjoint from a hitting set
                if rbits & table[idx][1] == 0:
                    return chosen + [idx]
            return None
        for idx in range(start, len(table)):
            ms = mins(table[idx][0])
            nxt = set()
            for A in reach:
                for B in ms:
                    if A & B == 0:
                        nxt.add(A | B)
            if not nxt:
                return chosen + [idx] + [0] * (k - pos - 1)
            got = dfs(pos + 1, nxt, chosen + [idx])
            if got is not None:
                return got
        return None

    for a in rng:
        got = dfs(1, set(mins(anchors[a][0])), [a])
        if got is not None:
            return got
    return None


def _search_chunk(args):
    plan, lo, hi = args
    return _search(plan, range(lo, hi))


def _certificate(plan: _Plan, chosen: list[int]) -> BadAssignmentCertificate:
    k = len(plan.order)
    parts: list[tuple[int, ...]] = [()] * k
    for pos, idx in enumerate(chosen):
        i = plan.order[pos]
        lists = plan.tables[pos][idx][2]
        # lists are in descending-demand order; map back onto the part's slots
        dem = plan.demand[i]
        slots = sorted(range(len(dem)), key=lambda j: (-dem[j], j))
        placed = [0] * len(dem)
        for j, m in zip(slots, lists):
            placed[j] = m
        parts[i] = tuple(placed)
    inst = Instance(plan.pot, tuple(parts))
    if decide_colorable(inst) is not None:
        raise AssertionError("search produced a colorable certificate")
    return BadAssignmentCertificate(inst, plan.demand, plan.pot)


def default_workers() -> int:
    return os.cpu_count() or 1


def find_bad_assignment(shape: Sequence[int], demand, pot_bound: int | None = None,
                        workers: int = 1) -> BadAssignmentCertificate | None:
    """A certificate that ``shape`` is not ``demand``-choosable, or ``None``.

    ``pot_bound`` defaults to ``n - 1`` (raised to the largest demand when
    that is bigger; such demands are trivially choosable anyway).
    """
    shape = validate_shape(shape)
    dem = normalize_demand(shape, demand)
    dmax = max(f for p in dem for f in p)
    n = sum(shape)
    if pot_bound is None:
        pot = max(n - 1, dmax)
    else:
        if pot_bound < dmax:
            raise ValueError(f"pot bound {pot_bound} is below the largest demand {dmax}")
        pot = pot_bound
    plan = _build_plan(shape, dem, pot)
    log.debug("choosability %s pot=%d table sizes %s", shape, pot, [len(t) for t in plan.tables])
    n_anchor = len(plan.tables[0])
    if workers > 1 and n_anchor >= 2 * workers and len(shape) > 1:
        step = -(-n_anchor // (workers * 4))
        chunks = [(plan, lo, min(lo + step, n_anchor)) for lo in range(0, n_anchor, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            # chunks are contiguous anchor ranges, so the first chunk with a hit
            # gives exactly the sequential answer
            for got in ex.map(_search_chunk, chunks):
                if got is not None:
                    return _certificate(plan, got)
        return None
    got = _search(plan)
    return None if got is None else _certificate(plan, got)


def is_f_choosable(shape: Sequence[int], demand, pot_bound: int | None = None,
                   workers: int = 1) -> bool:
    return find_bad_assignment(shape, demand, pot_bound, workers) is None


def choice_number(shape: Sequence[int], lower_hint: int | None = None, workers: int = 1) -> int:
    """Least uniform t such that ``shape`` is t-choosable."""
    shape = validate_shape(shape)
    t = max(len(shape), lower_hint or 1)
    while not is_f_choosable(shape, t, workers=workers):
        t += 1
    return t
