"""Winning strategy trees for the paint game and an independent replay check.

Nodes are dicts. Repeated positions are written once with an ``id`` and
later referenced as ``{"ref": id}``, which keeps Bob trees (one reply per
Alice move) from blowing up.
"""
from __future__ import annotations

import json

from .game import (ALICE_WON, BOB_WON, Position, alice_moves, canonicalize_position,
                   response, response_parts, validate_move)
from .kernel import Solver


def _as_pos(obj) -> Position:
    return tuple(tuple(c) for c in obj)


def _pos_json(pos: Position):
    return [list(c) for c in pos]


def export_strategy(pos, solver: Solver | None = None, side: str | None = None) -> dict:
    """Strategy tree for the winner of ``pos`` (or for ``side``, which must win)."""
    solver = solver or Solver()
    pos = canonicalize_position(pos)
    winner = solver.solve_position(pos)
    if side is not None and side != winner:
        raise ValueError(f"{side} does not win {pos}")
    ids: dict[Position, int] = {}

    def node(p: Position) -> dict:
        if p in ids:
            return {"ref": ids[p]}
        nid = len(ids)
        ids[p] = nid
        out = {"id": nid, "pos": _pos_json(p), "winner": winner}
        if winner == "alice":
            if p == ALICE_WON:
                out["terminal"] = "budget exhausted"
                return out
            for mv in alice_moves(p):
                succ = response_parts(p, mv)
                if all(solver.alice_wins(q) for _, q in succ):
                    out["move"] = [list(c) for c in mv]
                    out["children"] = [
                        {"part": i, "child": node(q)} for i, q in succ if q != ALICE_WON]
                    return out
            raise AssertionError(f"no winning move found at {p}")
        if p == BOB_WON:
            out["terminal"] = "all colored"
            return out
        replies = []
        for mv in alice_moves(p):
            for i, q in response_parts(p, mv):
                if q != ALICE_WON and not solver.alice_wins(q):
                    replies.append({"move": [list(c) for c in mv], "part": i, "child": node(q)})
                    break
            else:
                raise AssertionError(f"no Bob reply to {mv} at {p}")
        out["children"] = replies
        return out

    return node(pos)


class ReplayError(AssertionError):
    pass


def replay_strategy(tree: dict) -> bool:
    """Check the tree wins against every opponent choice, without any solver."""
    nodes: dict[int, dict] = {}

    def collect(n):
        if "ref" in n:
            return
        if n["id"] in nodes:
            raise ReplayError(f"duplicate id {n['id']}")
        nodes[n["id"]] = n
        for ch in n.get("children", []):
            collect(ch["child"])

    collect(tree)
    winner = tree["winner"]
    if winner not in ("alice", "bob"):
        raise ReplayError(f"bad winner {winner!r}")

    def resolve(n):
        if "ref" in n:
            if n["ref"] not in nodes:
                raise ReplayError(f"dangling ref {n['ref']}")
            return nodes[n["ref"]]
        return n

    for n in nodes.values():
        pos = _as_pos(n["pos"])
        if canonicalize_position(pos) != pos:
            raise ReplayError(f"node {n['id']} position is not canonical")
        if n.get("winner") != winner:
            raise ReplayError(f"node {n['id']} claims a different winner")
        if winner == "alice":
            if pos == ALICE_WON:
                continue
            if pos == BOB_WON:
                raise ReplayError(f"node {n['id']}: Bob has colored everything")
            mv = _as_pos(n["move"])
            validate_move(pos, mv)
            kids = {_as_pos(resolve(ch["child"])["pos"]) for ch in n["children"]}
            for _, q in response_parts(pos, mv):
                if q != ALICE_WON and q not in kids:
                    raise ReplayError(f"node {n['id']}: Bob reply {q} is not covered")
        else:
            if pos == ALICE_WON:
                raise ReplayError(f"node {n['id']}: a vertex ran out of budget")
            if pos == BOB_WON:
                continue
            answered = {}
            for ch in n["children"]:
                answered[_as_pos(ch["move"])] = ch
            for mv in alice_moves(pos):
                ch = answered.get(mv)
                if ch is None:
                    raise ReplayError(f"node {n['id']}: Alice move {mv} unanswered")
                part = ch["part"]
                if not (0 <= part < len(mv) and mv[part]):
                    raise ReplayError(f"node {n['id']}: reply colors nothing")
                q = response(pos, mv, part)
                if q != _as_pos(resolve(ch["child"])["pos"]):
                    raise ReplayError(f"node {n['id']}: reply leads elsewhere")
                if q == ALICE_WON:
                    raise ReplayError(f"node {n['id']}: reply leaves a vertex without budget")
    return True


def strategy_to_json(tree: dict) -> str:
    return json.dumps(tree, sort_keys=True, separators=(",", ":"))


def strategy_size(tree: dict) -> int:
    count = 0
    stack = [tree]
    while stack:
        n = stack.pop()
        if "ref" in n:
            continue
        count += 1
        stack.extend(ch["child"] for ch in n.get("children", []))
    return count
