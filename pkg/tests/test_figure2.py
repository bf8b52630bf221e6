from __future__ import annotations

from listcolor.paintability import figure2
from listcolor.paintability.figure2 import dominated, verify_figure2


def test_dominated():
    assert dominated(((3, 2), (2,)), ((3, 3), (2,)))
    assert dominated(((3, 2), (2,), (1,)), ((3, 3), (2,)))
    assert not dominated(((3, 3), (2,)), ((3, 2), (2,)))
    assert not dominated(((3,),), ((3,), (1,)))


def test_figure_verifies():
    rep = verify_figure2()
    assert rep.ok, [e for e in rep.entries if not e["ok"]]
    kinds = {e["kind"] for e in rep.entries}
    assert {"start", "alice wins", "reply", "arrows", "terminal"} <= kinds
    assert sum(e["kind"] == "terminal" for e in rep.entries) == 5


def test_wrong_arrow_is_caught(monkeypatch):
    monkeypatch.setattr(figure2, "ARROWS", figure2.ARROWS + [("a0", "d2")])
    rep = verify_figure2()
    assert not rep.ok
    assert any(e["kind"] == "arrows" and e["name"] == "a0" and not e["ok"] for e in rep.entries)


def test_choosable_terminal_is_caught(monkeypatch):
    positions = dict(figure2.POSITIONS)
    positions["c3"] = [[3, 3], [3], [3]]
    monkeypatch.setattr(figure2, "POSITIONS", positions)
    rep = verify_figure2()
    assert any(e["kind"] == "terminal" and e["name"] == "c3" and not e["ok"] for e in rep.entries)
