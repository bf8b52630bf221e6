"""Systems of distinct representatives over small families of color sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

Tag = Hashable
SetFamily = Sequence[tuple[Tag, Iterable[int]]]
Sdr = dict


@dataclass(frozen=True)
class Violator:
    """A subfamily whose union is smaller than the subfamily itself."""

    tags: tuple
    union: frozenset


def _normalize(fam: SetFamily) -> list[tuple[Tag, tuple[int, ...]]]:
    out = []
    seen = set()
    for tag, s in fam:
        if tag in seen:
            raise ValueError(f"duplicate tag {tag!r}")
        seen.add(tag)
        out.append((tag, tuple(sorted(set(s)))))
    return out


def _match(items: list[tuple[Tag, tuple[int, ...]]], blocked=frozenset()):
    """Kuhn's augmenting paths; returns (tag->color, first unmatched index)."""
    owner: dict[int, int] = {}
    rep: list[int | None] = [None] * len(items)

    def augment(i, seen):
        for c in items[i][1]:
            if c in blocked or c in seen:
                continue
            seen.add(c)
            j = owner.get(c)
            if j is None or augment(j, seen):
                owner[c] = i
                rep[i] = c
                return True
        return False

    for i in range(len(items)):
        if not augment(i, set()):
            return rep, owner, i
    return rep, owner, None


def _violator_from(items, owner, i, blocked=frozenset()):
    # tags reachable by alternating paths from the exposed tag i
    reached = {i}
    colors: set[int] = set()
    stack = [i]
    while stack:
        t = stack.pop()
        for c in items[t][1]:
            if c in blocked or c in colors:
                continue
            colors.add(c)
            j = owner.get(c)
            if j is not None and j not in reached:
                reached.add(j)
                stack.append(j)
    tags = tuple(items[t][0] for t in sorted(reached))
    return Violator(tags, frozenset(colors))


def find_sdr(fam: SetFamily) -> Sdr | Violator:
    """Return ``{tag: color}`` for an SDR of ``fam`` or a Hall violator."""
    items = _normalize(fam)
    rep, owner, bad = _match(items)
    if bad is not None:
        return _violator_from(items, owner, bad)
    return {items[i][0]: rep[i] for i in range(len(items))}


def extend_sdr(base: Mapping[Tag, int], fam: SetFamily) -> Sdr | Violator:
    """Extend ``base`` to ``fam`` without moving any base representative.

    New representatives must avoid ``ra(base)``; the returned violator's
    union is taken relative to the colors still available.
    """
    items = _normalize(fam)
    clash = [t for t, _ in items if t in base]
    if clash:
        raise ValueError(f"tags already represented in base: {clash!r}")
    used = frozenset(base.values())
    rep, owner, bad = _match(items, used)
    if bad is not None:
        return _violator_from(items, owner, bad, used)
    out = dict(base)
    for i, (tag, _) in enumerate(items):
        out[tag] = rep[i]
    return out


def hall_violator(fam: SetFamily) -> Violator | None:
    """An inclusion-minimal Hall violator, or ``None`` if Hall's condition holds."""
    items = _normalize(fam)
    res = find_sdr(items)
    if not isinstance(res, Violator):
        return None
    current = list(res.tags)
    sets = dict(items)
    shrunk = True
    while shrunk:
        shrunk = False
        for t in current:
            rest = [(u, sets[u]) for u in current if u != t]
            sub = find_sdr(rest)
            if isinstance(sub, Violator):
                current = list(sub.tags)
                shrunk = True
                break
    order = {tag: i for i, (tag, _) in enumerate(items)}
    current.sort(key=order.get)
    union = frozenset().union(*(sets[t] for t in current))
    return Violator(tuple(current), union)


def is_sdr(sdr: Mapping[Tag, int], fam: SetFamily) -> bool:
    items = _normalize(fam)
    if set(sdr) != {t for t, _ in items}:
        return False
    if len(set(sdr.values())) != len(sdr):
        return False
    return all(sdr[t] in s for t, s in items)
