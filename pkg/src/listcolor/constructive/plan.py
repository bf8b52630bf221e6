"""State records shared by the merge-and-SDR coloring algorithms."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations

from ..core import Coloring, Instance, colors_of, popcount

PAIRS4 = tuple(combinations(range(4), 2))
TRIPLES4 = tuple(combinations(range(4), 3))
PARTITIONS4 = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def rest_of(slots, size: int) -> tuple[int, ...]:
    return tuple(j for j in range(size) if j not in slots)


class PreconditionViolated(ValueError):
    pass


class FalsificationCertificate(AssertionError):
    """A construction step that should always succeed could not be carried out.

    Either the implementation is wrong or the input is a counterexample;
    ``state`` holds a JSON-ready dump of everything computed so far.
    """

    def __init__(self, step: str, detail: str, state: dict | None = None):
        super().__init__(f"{step}: {detail}")
        self.step = step
        self.detail = detail
        self.state = state or {}

    def to_json(self) -> str:
        return json.dumps({"step": self.step, "detail": self.detail, "state": self.state},
                          sort_keys=True, default=str)


class Unreachable(AssertionError):
    """Exact search found no coloring for an instance the construction covers."""


@dataclass
class MergePlan:
    """Everything the merge algorithm decided for one instance.

    ``classes`` maps class names (``U1``..``U4``, ``R1``..``R3``; ``U1``,
    ``U2``, ``R`` for part size three) to part indices. ``pairs[X]`` is the
    merged subset I_X. ``merged`` maps a tag of a merged vertex to
    ``(part, slots)``. ``sdrs`` holds the staged SDRs ``f1``..``f4`` and the
    SDR ``f`` of all merged vertices; ``final`` is the SDR over every vertex
    of the merged graph.
    """

    s: int
    k: int
    l: int
    b: int = 0
    classes: dict[str, list[int]] = field(default_factory=dict)
    pairs: dict[int, tuple[int, ...]] = field(default_factory=dict)
    merged: dict[str, tuple[int, tuple[int, ...]]] = field(default_factory=dict)
    sdrs: dict[str, dict[str, int]] = field(default_factory=dict)
    z_dot: int | None = None
    special: dict = field(default_factory=lambda: {
        "u_dot": 0, "r_dot": 0, "u_ddot": 0, "case": None, "part": None, "pair": None})
    g_size: int = 0
    final: dict[str, int] = field(default_factory=dict)
    records: list[dict] = field(default_factory=list)

    def count(self, name: str) -> int:
        return len(self.classes.get(name, ()))

    def class_of(self, part: int) -> str | None:
        for name, members in self.classes.items():
            if part in members:
                return name
        return None

    def ranges(self) -> dict[str, list[int]]:
        return {name: sorted(f.values()) for name, f in self.sdrs.items()}

    def to_json_obj(self) -> dict:
        obj = asdict(self)
        obj["pairs"] = {str(x): list(v) for x, v in self.pairs.items()}
        obj["merged"] = {t: [p, list(sl)] for t, (p, sl) in self.merged.items()}
        obj["ranges"] = self.ranges()
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, default=list)


def original_tag(part: int, slot: int) -> str:
    return f"v{part}.{slot}"


def graph_vertices(inst: Instance, plan: MergePlan) -> list[tuple[str, int, tuple[int, ...]]]:
    """Vertices of the merged graph as ``(tag, part, slots)`` in a fixed order."""
    covered: dict[int, set[int]] = {}
    out = []
    for tag, (part, slots) in plan.merged.items():
        covered.setdefault(part, set()).update(slots)
        out.append((tag, part, tuple(slots)))
    for i, p in enumerate(inst.parts):
        for j in range(len(p)):
            if j not in covered.get(i, ()):
                out.append((original_tag(i, j), i, (j,)))
    order = {tag: n for n, tag in enumerate(plan.merged)}
    out.sort(key=lambda t: (t[1], order.get(t[0], len(order)), t[2]))
    return out


def list_of_slots(inst: Instance, part: int, slots) -> int:
    acc = -1
    for j in slots:
        acc &= inst.parts[part][j]
    return acc


def vertex_family(inst: Instance, plan: MergePlan):
    return [(tag, colors_of(list_of_slots(inst, part, slots)))
            for tag, part, slots in graph_vertices(inst, plan)]


def expand(inst: Instance, plan: MergePlan, sdr: dict[str, int]) -> Coloring:
    col: Coloring = {}
    for tag, part, slots in graph_vertices(inst, plan):
        for j in slots:
            col[(part, j)] = sdr[tag]
    return dict(sorted(col.items()))


def check_preconditions(inst: Instance, s: int, l: int) -> None:
    if any(len(p) != s for p in inst.parts):
        raise PreconditionViolated(f"shape must be K_{{{s}*k}}, got {inst.shape}")
    if not inst.is_uniform(l):
        raise PreconditionViolated(f"all lists must have size {l}")
    if inst.pot_size > s * inst.k - 1:
        raise PreconditionViolated(f"pot size {inst.pot_size} exceeds {s * inst.k - 1}")
    for i in range(inst.k):
        if inst.part_intersection(i):
            raise PreconditionViolated(f"part {i} has a common color")


__all__ = [
    "PAIRS4", "TRIPLES4", "PARTITIONS4", "rest_of", "MergePlan", "PreconditionViolated",
    "FalsificationCertificate", "Unreachable", "graph_vertices", "vertex_family", "expand",
    "check_preconditions", "list_of_slots", "original_tag", "popcount",
]
