"""Instances of list coloring on complete multipartite graphs.

Vertices are adjacent exactly when they lie in different parts, so an
instance is fully described by its part sizes and one color list per vertex.
Lists are stored as integer bitmasks over the pot ``0..pot-1``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Shape = tuple[int, ...]
Vertex = tuple[int, int]
Coloring = dict[Vertex, int]


class ShapeError(ValueError):
    pass


class ScheduleViolation(ValueError):
    """A list fell below the size demanded by a reduction schedule."""


def parse_shape(text: str) -> Shape:
    """Parse ``"4*3"`` (three parts of size four) or ``"2,2,3"``."""
    text = text.strip().replace(" ", "")
    m = re.fullmatch(r"(\d+)\*(\d+)", text)
    if m:
        s, k = int(m.group(1)), int(m.group(2))
        sizes: Shape = (s,) * k
    elif re.fullmatch(r"\d+(,\d+)*", text):
        sizes = tuple(int(t) for t in text.split(","))
    else:
        raise ShapeError(f"cannot parse shape {text!r}")
    validate_shape(sizes)
    return sizes


def validate_shape(sizes: Sequence[int]) -> Shape:
    sizes = tuple(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ShapeError(f"invalid shape {sizes!r}")
    return sizes


def uniform_shape(s: int, k: int) -> Shape:
    return validate_shape((s,) * k)


def format_shape(sizes: Sequence[int]) -> str:
    sizes = tuple(sizes)
    if len(set(sizes)) == 1 and len(sizes) > 1:
        return f"{sizes[0]}*{len(sizes)}"
    return ",".join(map(str, sizes))


# ---------------------------------------------------------------- bitmasks

def mask_of(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= 1 << c
    return m


def colors_of(mask: int) -> tuple[int, ...]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest_colors(mask: int, count: int) -> int:
    """Keep the ``count`` smallest colors of ``mask``."""
    out = 0
    while count > 0 and mask:
        low = mask & -mask
        out |= low
        mask ^= low
        count -= 1
    return out


# ---------------------------------------------------------------- instance

@dataclass(frozen=True)
class Instance:
    """A complete multipartite graph together with a list assignment.

    ``parts[i][j]`` is the color bitmask of the vertex in slot ``j`` of
    part ``i``.
    """

    pot: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        parts = tuple(tuple(int(m) for m in p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(len(p) == 0 for p in parts):
            raise ValueError("an instance needs at least one nonempty part")
        limit = 1 << self.pot
        for i, p in enumerate(parts):
            for j, m in enumerate(p):
                if m <= 0:
                    raise ValueError(f"vertex {(i, j)} has an empty list")
                if m >= limit:
                    raise ValueError(f"vertex {(i, j)} uses a color >= pot {self.pot}")

    @classmethod
    def from_lists(cls, parts: Iterable[Iterable[Iterable[int]]], pot: int | None = None) -> "Instance":
        masks = tuple(tuple(mask_of(lst) for lst in part) for part in parts)
        if pot is None:
            union = 0
            for p in masks:
                for m in p:
                    union |= m
            pot = union.bit_length()
        return cls(pot, masks)

    @property
    def shape(self) -> Shape:
        return tuple(len(p) for p in self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    def vertices(self) -> list[Vertex]:
        return [(i, j) for i, p in enumerate(self.parts) for j in range(len(p))]

    def list_of(self, v: Vertex) -> tuple[int, ...]:
        return colors_of(self.parts[v[0]][v[1]])

    def lists(self) -> list[list[list[int]]]:
        return [[list(colors_of(m)) for m in p] for p in self.parts]

    @cached_property
    def union(self) -> int:
        u = 0
        for p in self.parts:
            for m in p:
                u |= m
        return u

    @property
    def pot_size(self) -> int:
        """Number of colors actually appearing in some list."""
        return popcount(self.union)

    def list_sizes(self) -> list[list[int]]:
        return [[popcount(m) for m in p] for p in self.parts]

    def is_uniform(self, size: int | None = None) -> bool:
        sizes = {popcount(m) for p in self.parts for m in p}
        return len(sizes) == 1 and (size is None or sizes == {size})

    def part_intersection(self, i: int) -> int:
        acc = -1
        for m in self.parts[i]:
            acc &= m
        return acc

    # JSON: {"pot": p, "parts": [[[c, ...], ...], ...]}
    def to_json_obj(self) -> dict:
        return {"pot": self.pot, "parts": self.lists()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Instance":
        if not isinstance(obj, dict) or "parts" not in obj:
            raise ValueError("instance JSON must be an object with 'parts'")
        parts = obj["parts"]
        for part in parts:
            for lst in part:
                if any((not isinstance(c, int)) or c < 0 for c in lst):
                    raise ValueError("colors must be nonnegative integers")
        return cls.from_lists(parts, obj.get("pot"))

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_json_obj(json.loads(text))


def demand_to_json(demand: Sequence[Sequence[int]]) -> str:
    return json.dumps({"parts": [list(p) for p in demand]}, sort_keys=True)


def demand_from_json(text: str) -> tuple[tuple[int, ...], ...]:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "parts" not in obj:
        raise ValueError("demand JSON must be an object with 'parts'")
    parts = tuple(tuple(int(f) for f in p) for p in obj["parts"])
    if not parts or any(not p for p in parts) or any(f < 1 for p in parts for f in p):
        raise ValueError("demands must be positive integers in nonempty parts")
    return parts


# ---------------------------------------------------------------- formula

def l_formula(s: int, k: int) -> int:
    """The expected choice number ``ceil((2(s-1)k - s + 2) / s)`` of K_{s*k}."""
    if s < 2:
        raise ValueError("part size must be at least 2")
    if k < 1:
        raise ValueError("number of parts must be at least 1")
    return -(-(2 * (s - 1) * k - s + 2) // s)


# ---------------------------------------------------------------- part stats

@dataclass(frozen=True)
class PartStats:
    """Bookkeeping for one part X.

    ``n[i]`` counts colors appearing in exactly ``i`` lists of X,
    ``sigma[i]`` sums ``l(I)`` over ``i``-subsets and ``mu[i]`` is the max.
    Index 0 of each tuple is unused.
    """

    part: int
    lists: tuple[int, ...]
    W: int
    n: tuple[int, ...]
    N: tuple[int, ...]
    sigma: tuple[int, ...]
    mu: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.lists)

    def L(self, subset: Iterable[int]) -> int:
        acc = -1
        empty = True
        for j in subset:
            acc &= self.lists[j]
            empty = False
        return 0 if empty else acc

    def l(self, subset: Iterable[int]) -> int:
        return popcount(self.L(subset))

    def W_of(self, subset: Iterable[int]) -> int:
        acc = 0
        for j in subset:
            acc |= self.lists[j]
        return acc

    def multiplicity(self, color: int) -> int:
        return sum(1 for m in self.lists if m >> color & 1)

    def holders(self, color: int) -> tuple[int, ...]:
        """Slots whose lists contain ``color``."""
        return tuple(j for j, m in enumerate(self.lists) if m >> color & 1)


def stats_of_lists(lists: Sequence[int], part: int = 0) -> PartStats:
    lists = tuple(lists)
    s = len(lists)
    W = 0
    for m in lists:
        W |= m
    N = [0] * (s + 1)
    for c in colors_of(W):
        N[sum(1 for m in lists if m >> c & 1)] |= 1 << c
    n = tuple(popcount(x) for x in N)
    sigma = [0] * (s + 1)
    mu = [0] * (s + 1)
    for i in range(1, s + 1):
        for sub in combinations(range(s), i):
            acc = -1
            for j in sub:
                acc &= lists[j]
            v = popcount(acc)
            sigma[i] += v
            mu[i] = max(mu[i], v)
    return PartStats(part, lists, W, n, tuple(N), tuple(sigma), tuple(mu))


def part_stats(inst: Instance, part: int) -> PartStats:
    if not 0 <= part < inst.k:
        raise IndexError(f"part {part} out of range")
    return stats_of_lists(inst.parts[part], part)


# ---------------------------------------------------------------- reductions

@dataclass
class StripResult:
    residual: Instance | None
    coloring: Coloring
    kept: tuple[int, ...]
    """Original index of each residual part."""

    def __iter__(self):
        # allows ``residual, coloring = strip_common_parts(...)``
        return iter((self.residual, self.coloring))


def strip_common_parts(inst: Instance, sizes: Sequence[int] = ()) -> StripResult:
    """Color away every part whose lists share a color.

    While some part X has a common color, the lowest-index such part is
    colored with its smallest common color, removed, and that color is
    deleted from all remaining lists. ``sizes[r]`` is the list size required
    after ``r`` removals; remaining lists are truncated to it (keeping the
    smallest colors). A list shorter than required raises
    ``ScheduleViolation``.
    """
    parts = [list(p) for p in inst.parts]
    kept = list(range(inst.k))
    coloring: Coloring = {}
    removed = 0
    while True:
        hit = None
        for idx, p in enumerate(parts):
            common = -1
            for m in p:
                common &= m
            if common:
                hit = idx, common & -common
                break
        if hit is None:
            break
        idx, bit = hit
        alpha = bit.bit_length() - 1
        for j in range(len(parts[idx])):
            coloring[(kept[idx], j)] = alpha
        del parts[idx]
        del kept[idx]
        removed += 1
        need = sizes[removed] if removed < len(sizes) else None
        for p in parts:
            for j, m in enumerate(p):
                m &= ~bit
                if need is not None:
                    if popcount(m) < need:
                        raise ScheduleViolation(
                            f"list of size {popcount(m)} below required {need} after {removed} removals")
                    m = lowest_colors(m, need)
                if m == 0:
                    raise ScheduleViolation("a list became empty")
                p[j] = m
    residual = Instance(inst.pot, tuple(tuple(p) for p in parts)) if parts else None
    return StripResult(residual, coloring, tuple(kept))


# ---------------------------------------------------------------- canonical form

def _refine(parts, color_cells):
    """Iterated refinement of color labels; returns color -> rank."""
    colors = sorted(color_cells)
    label = dict(color_cells)
    while True:
        vlab = []
        for p in parts:
            row = []
            for m in p:
                row.append(tuple(sorted(label[c] for c in colors_of(m))))
            vlab.append(row)
        plab = [tuple(sorted(r)) for r in vlab]
        sig = {}
        for c in colors:
            prof = []
            for i, p in enumerate(parts):
                hits = tuple(sorted(vlab[i][j] for j, m in enumerate(p) if m >> c & 1))
                if hits:
                    prof.append((len(p), plab[i], hits))
            sig[c] = (label[c], tuple(sorted(prof)))
        ranks = {s: r for r, s in enumerate(sorted(set(sig.values())))}
        new = {c: ranks[sig[c]] for c in colors}
        if len(set(new.values())) == len(set(label.values())):
            return new
        label = new


def _relabel_form(parts, order):
    pos = {c: i for i, c in enumerate(order)}
    form = []
    for p in parts:
        lists = sorted(tuple(sorted(pos[c] for c in colors_of(m))) for m in p)
        form.append((len(p), tuple(lists)))
    form.sort()
    return tuple(form)


def canonical_form(inst: Instance):
    """Isomorphism-invariant normal form of an instance.

    Invariant under color relabeling, permutation of vertices inside a
    part, and permutation of equal-sized parts. Computed by refinement plus
    individualization of colors; the minimum over all leaf orderings is
    taken, so the result is exact (not just a heuristic signature).
    """
    parts = inst.parts
    used = colors_of(inst.union)
    best = None

    def search(cells):
        nonlocal best
        cells = _refine(parts, cells)
        groups: dict[int, list[int]] = {}
        for c, r in cells.items():
            groups.setdefault(r, []).append(c)
        target = next((r for r in sorted(groups) if len(groups[r]) > 1), None)
        if target is None:
            order = sorted(cells, key=cells.get)
            form = _relabel_form(parts, order)
            if best is None or form < best:
                best = form
            return
        for c in groups[target]:
            nxt = {d: 2 * r + (1 if (r == target and d != c) else 0) for d, r in cells.items()}
            search(nxt)

    search({c: 0 for c in used})
    return best


def canonicalize_instance(inst: Instance) -> Instance:
    form = canonical_form(inst)
    parts = tuple(tuple(mask_of(lst) for lst in lists) for _, lists in form)
    return Instance(inst.pot_size, parts)
