"""Machine check of a hand-drawn Alice strategy on K_{4*3} with four tokens each.

The strategy is stored as data: positions (columns are parts, numbers are
remaining budgets), the set Alice presents at each non-terminal position,
and arrows to the depicted successors. Omitted Bob replies must be
dominated by a depicted successor or are settled by solving.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from ..choosability import is_f_choosable
from .game import ALICE_WON, Position, canonicalize_position, response_parts, validate_move
from .kernel import Solver

POSITIONS: dict[str, list[list[int]]] = {
    "a0": [[4, 4, 4, 4], [4, 4, 4, 4], [4, 4, 4, 4]],
    "a1": [[4, 4, 3, 3], [4, 4, 3, 3], [4, 4]],
    "a2": [[3, 3, 3, 3], [3, 3, 3, 3], [4]],
    "a3": [[3, 3, 2, 2], [3, 3, 2, 2]],
    "a4": [[2, 2, 2, 2], [2, 2]],
    "b1": [[3, 3, 3, 3], [3, 3], [4, 3]],
    "b2": [[3, 3, 2, 2], [3, 3], [3]],
    "b3": [[2, 2, 2, 2], [3], [3]],
    "b4": [[2, 2, 1, 1], [2]],
    "c1": [[3, 2], [3, 3], [3, 3]],
    "c2": [[2, 2], [3, 2], [3]],
    "c3": [[2, 2], [2], [2]],
    "d1": [[3, 2], [3, 2], [2]],
    "d2": [[2, 1], [2, 2]],
}

# presented budgets per column, columns in the order written above
MOVES: dict[str, list[list[int]]] = {
    "a0": [[4, 4], [4, 4], [4, 4]],
    "a1": [[4, 4], [4, 4], [4]],
    "a2": [[3, 3], [3, 3], [4]],
    "a3": [[3, 3], [3, 3]],
    "b1": [[3, 3], [3], [4]],
    "b2": [[3, 3], [3], []],
    "b3": [[2, 2], [3], [3]],
    "c1": [[3], [3], [3]],
    "c2": [[2], [3], [3]],
}

ARROWS: list[tuple[str, str]] = [
    ("a0", "a1"), ("a1", "a2"), ("a1", "b1"), ("a2", "a3"), ("a2", "b2"), ("a3", "a4"),
    ("b1", "b2"), ("b1", "c1"), ("b2", "b3"), ("b2", "c2"), ("b3", "b4"), ("b3", "c3"),
    ("c1", "c2"), ("c1", "d1"), ("c2", "c3"), ("c2", "d2"),
]

TERMINALS = ("a4", "b4", "c3", "d1", "d2")


def dominated(p: Position, d: Position) -> bool:
    """Whether ``p`` is at least as good for Alice as ``d``.

    After deleting vertices of ``p`` (which never helps Bob) and matching
    columns, every budget of ``p`` is at most the matching budget of ``d``.
    """
    if p == d:
        return True
    if len(p) < len(d):
        return False
    for cols in permutations(range(len(p)), len(d)):
        ok = True
        for dc, pi in zip(d, cols):
            pc = sorted(p[pi])
            dd = sorted(dc)
            if len(pc) < len(dd) or any(a > b for a, b in zip(pc, dd)):
                ok = False
                break
        if ok:
            return True
    return False


def _order_move(raw_pos, raw_move) -> tuple[Position, tuple]:
    """Carry a move written against ``raw_pos`` over to its canonical column order."""
    pairs = sorted(((tuple(sorted(c, reverse=True)), tuple(sorted(m, reverse=True)))
                    for c, m in zip(raw_pos, raw_move) if c), key=lambda t: t[0], reverse=True)
    return tuple(c for c, _ in pairs), tuple(m for _, m in pairs)


@dataclass
class FigureReport:
    entries: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e["ok"] for e in self.entries)

    def add(self, kind: str, name: str, ok: bool, **detail):
        self.entries.append({"kind": kind, "name": name, "ok": bool(ok), **detail})

    def to_json_obj(self) -> dict:
        return {"ok": self.ok, "entries": self.entries}


def verify_figure2(solver: Solver | None = None) -> FigureReport:
    solver = solver or Solver()
    rep = FigureReport()
    canon = {n: canonicalize_position(p) for n, p in POSITIONS.items()}
    succ: dict[str, list[str]] = {}
    for a, b in ARROWS:
        succ.setdefault(a, []).append(b)
    rep.add("start", "a0", canon["a0"] == ((4, 4, 4, 4),) * 3,
            pos=[list(c) for c in canon["a0"]])

    for name, pos in canon.items():
        rep.add("alice wins", name, solver.alice_wins(pos), pos=[list(c) for c in pos])

    for name, raw in MOVES.items():
        pos, mv = _order_move(POSITIONS[name], raw)
        try:
            validate_move(pos, mv)
        except ValueError as exc:
            rep.add("move", name, False, error=str(exc))
            continue
        targets = succ.get(name, [])
        matched = set()
        for part, q in response_parts(pos, mv):
            qj = [list(c) for c in q]
            if q == ALICE_WON:
                rep.add("reply", name, True, part=part, result="budget exhausted")
                continue
            equal = [t for t in targets if canon[t] == q]
            if equal:
                matched.update(equal)
                rep.add("reply", name, True, part=part, pos=qj, result="depicted", target=equal[0])
                continue
            dom = [t for t in targets if dominated(q, canon[t])]
            if dom:
                rep.add("reply", name, True, part=part, pos=qj, result="dominated", target=dom[0])
                continue
            rep.add("reply", name, solver.alice_wins(q), part=part, pos=qj,
                    result="verified by solving")
        missing = [t for t in targets if t not in matched]
        rep.add("arrows", name, not missing, unmatched=missing)

    for name in TERMINALS:
        if name in MOVES:
            rep.add("terminal", name, False, error="terminal has a move")
            continue
        pos = canon[name]
        shape = [len(c) for c in pos]
        choosable = is_f_choosable(shape, [list(c) for c in pos])
        rep.add("terminal", name, not choosable, shape=shape, choosable=choosable)
    return rep
