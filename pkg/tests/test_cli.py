from __future__ import annotations

import json
import subprocess
import sys

import pytest

from listcolor.cli import main
from listcolor.core import Instance
from listcolor.lowerbound import gen_example1


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["choice", "--shape", "2,2"], 0),
    (["choosable", "--shape", "2,2", "--size", "2"], 0),
    (["choosable", "--shape", "3,3", "--size", "2"], 1),
    (["paint", "--shape", "2,2,3", "--size", "3"], 0),
    (["paint-number", "--shape", "2,2"], 0),
    (["verify", "figure2"], 0),
    (["verify", "theorem", "--s", "3", "--kmax", "3", "--samples", "5"], 0),
    (["choice", "--shape", "x"], 2),
    (["choosable", "--shape", "2,2"], 2),
    (["choosable", "--shape", "2,2", "--size", "0"], 2),
    (["choosable", "--shape", "2,2", "--size", "3", "--pot-bound", "2"], 2),
    (["color", "--instance", "/nonexistent.json"], 2),
    (["gen", "example2", "--k", "3", "-o", "/dev/null"], 2),
    (["verify", "theorem", "--s", "5"], 2),
    (["choice", "--shape", "2,2", "--threads", "0"], 2),
    (["nonsense"], 2),
    ([], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "e1.json"
    code, text, _ = run(capsys, "gen", "example1", "--s", "3", "--k", "2", "-o", str(out), "--json")
    assert code == 0
    assert Instance.from_json(out.read_text()) == gen_example1(3, 2)
    assert json.loads(text)["claimed_size"] == 2
    code, text, _ = run(capsys, "color", "--instance", str(out), "--json")
    assert code == 1 and json.loads(text) == {"colorable": False, "method": "search"}


def test_color_methods(tmp_path, capsys):
    import random

    from listcolor.constructive import random_precondition_instance

    for s in (3, 4):
        path = tmp_path / f"k{s}.json"
        path.write_text(random_precondition_instance(s, 3, random.Random(s)).to_json())
        for method in ("constructive", "search"):
            code, text, _ = run(capsys, "color", "--instance", str(path), "--method", method, "--json")
            rep = json.loads(text)
            assert code == 0 and rep["valid"] and rep["colorable"]


def test_constructive_needs_uniform_parts(tmp_path, capsys):
    path = tmp_path / "mixed.json"
    path.write_text(Instance.from_lists([[[0, 1], [1, 2]], [[0, 2]]], pot=3).to_json())
    assert run(capsys, "color", "--instance", str(path), "--method", "constructive")[0] == 2


def test_bad_instance_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(capsys, "color", "--instance", str(path))[0] == 2
    path.write_text(json.dumps({"pot": 2, "parts": [[[5]]]}))
    assert run(capsys, "color", "--instance", str(path))[0] == 2


def test_choosable_certificate_file(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "choosable", "--shape", "3,3", "--size", "2", "--cert", str(cert))
    assert code == 1
    obj = json.loads(cert.read_text())
    assert obj["unsat_verified"] and obj["demand"] == [[2, 2, 2], [2, 2, 2]]


def test_demand_file(tmp_path, capsys):
    dem = tmp_path / "d.json"
    dem.write_text(json.dumps({"parts": [[1, 2], [2, 2]]}))
    code, text, _ = run(capsys, "choosable", "--shape", "2,2", "--demand", str(dem), "--json")
    assert code in (0, 1) and "choosable" in json.loads(text)
    dem.write_text(json.dumps({"parts": [[1]]}))
    assert run(capsys, "choosable", "--shape", "2,2", "--demand", str(dem))[0] == 2


def test_paint_strategy_and_memo(tmp_path, capsys):
    strat, memo = tmp_path / "s.json", tmp_path / "m.bin"
    argv = ["paint", "--shape", "2,2,3", "--size", "4", "--strategy", str(strat),
            "--memo", str(memo), "--json"]
    code, text, _ = run(capsys, *argv)
    assert code == 0 and json.loads(text)["winner"] == "bob"
    first = memo.read_bytes()
    code, text2, _ = run(capsys, *argv)
    assert text2 == text and memo.read_bytes() == first
    from listcolor.paintability.strategy import replay_strategy

    assert replay_strategy(json.loads(strat.read_text()))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "listcolor.cli", "choice", "--shape", "1,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
