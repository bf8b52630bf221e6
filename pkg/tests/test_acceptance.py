"""Acceptance suite: each test is one numbered criterion, checked exactly.

A summary line per criterion is printed at the end of the pytest run.
"""
from __future__ import annotations

import itertools
import json
import os
import random
import subprocess
import sys

import pytest

from listcolor.choosability import choice_number, is_f_choosable
from listcolor.colorability import brute_force_colorable, check_coloring, decide_colorable
from listcolor.constructive import (FalsificationCertificate, claim_one_holds, color_K3k,
                                    random_precondition_instance, solve_K4k, verify_merge_plan)
from listcolor.core import Instance, l_formula, popcount
from listcolor.lowerbound import gen_example1, gen_example2
from listcolor.paintability import Solver, uniform_position
from listcolor.paintability.figure2 import TERMINALS, verify_figure2
from listcolor.sdr import Violator, find_sdr
from oracles import colorable, has_sdr
from strategies import as_sets

CORPUS_SIZE = 10_000
CORPUS_K = (2, 3, 4, 5)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@pytest.mark.criterion(1, "l(s,k) closed forms for s=2,3,4 and k=1..100")
def test_c01_formula_goldens():
    for k in range(1, 101):
        assert l_formula(2, k) == k
        assert l_formula(3, k) == ceil_div(4 * k - 1, 3)
        assert l_formula(4, k) == ceil_div(3 * k - 1, 2)


CHOICE_GOLDENS = [((2, 2), 2), ((2, 2, 2), 3), ((3, 3), 3), ((2, 2, 3), 3), ((1, 1, 3), 3),
                  ((4, 4), 3)]


@pytest.mark.criterion(2, "exhaustive choice numbers")
@pytest.mark.parametrize("shape,value", CHOICE_GOLDENS)
def test_c02_choice_numbers(shape, value):
    assert choice_number(shape) == value


LB_CASES = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)]


@pytest.mark.criterion(3, "lower-bound instances are not colorable")
@pytest.mark.parametrize("s,k", LB_CASES)
def test_c03_example1_unsat(s, k):
    inst = gen_example1(s, k)
    assert inst.shape == (s,) * k
    assert min(popcount(m) for p in inst.parts for m in p) >= l_formula(s, k) - 1
    assert decide_colorable(inst) is None
    if inst.n <= 9:
        assert not colorable(as_sets(inst))


@pytest.mark.criterion(3, "lower-bound instances are not colorable")
def test_c03_example2_unsat():
    inst = gen_example2(2)
    assert inst.shape == (15, 15)
    assert min(popcount(m) for p in inst.parts for m in p) >= 3
    assert decide_colorable(inst) is None


# ---------------------------------------------------------------- corpus

def spb_holds(inst: Instance, s: int, l: int) -> bool:
    """Recount color multiplicities per part straight from the lists."""
    for part in inst.parts:
        mult = [0] * inst.pot
        for m in part:
            for c in range(inst.pot):
                mult[c] += m >> c & 1
        lhs = sum(i - 1 for i in mult if i >= 2)
        if lhs < s * (l - inst.k) + 1:
            return False
    return True


class Corpus:
    def __init__(self, s: int, k: int):
        self.s, self.k = s, k
        self.colored = self.certificates = self.spb = 0
        self.failed_checks: dict[str, int] = {}
        self.plans = 0


@pytest.fixture(scope="module")
def corpus():
    out = {}
    for s in (3, 4):
        for k in CORPUS_K:
            rng = random.Random(f"acceptance:{s}:{k}")
            c = Corpus(s, k)
            l = l_formula(s, k)
            for _ in range(CORPUS_SIZE):
                inst = random_precondition_instance(s, k, rng)
                c.spb += spb_holds(inst, s, l)
                try:
                    if s == 3:
                        col, plan = color_K3k(inst), None
                    else:
                        res = solve_K4k(inst)
                        col, plan = res.coloring, res.plan
                except FalsificationCertificate:
                    c.certificates += 1
                    continue
                c.colored += bool(check_coloring(inst, col))
                if plan is not None:
                    c.plans += 1
                    for chk in verify_merge_plan(inst, plan).failed():
                        name = chk.name.split(" part ")[0]
                        c.failed_checks[name] = c.failed_checks.get(name, 0) + 1
            out[(s, k)] = c
    return out


@pytest.mark.criterion(4, "constructive colorings on 10^4 random instances per (s,k)")
@pytest.mark.parametrize("s", [3, 4])
def test_c04_constructive_soundness(corpus, s):
    for k in CORPUS_K:
        c = corpus[(s, k)]
        assert c.certificates == 0, (s, k)
        assert c.colored == CORPUS_SIZE, (s, k)


@pytest.mark.criterion(5, "per-step inequalities and the pair-partition claim")
def test_c05_step_inequalities(corpus):
    assert claim_one_holds()
    for (s, k), c in corpus.items():
        assert c.spb == CORPUS_SIZE, (s, k)
        assert c.failed_checks == {}, (s, k, c.failed_checks)
    assert sum(corpus[(4, k)].plans for k in CORPUS_K) > 0


# ---------------------------------------------------------------- paint

@pytest.fixture(scope="module")
def solver():
    return Solver()


@pytest.mark.criterion(6, "paint game goldens")
def test_c06_paint_goldens(solver):
    assert solver.solve_position(uniform_position((2, 2, 3), 3)) == "alice"
    assert solver.solve_position(uniform_position((2, 2, 3), 4)) == "bob"
    assert solver.solve_position(uniform_position((4, 4, 4), 4)) == "alice"
    assert solver.solve_position(uniform_position((4, 4, 4), 5)) == "bob"
    assert solver.paint_number((4, 4, 4)) == 5


@pytest.mark.criterion(7, "hand-drawn K_{4*3} Alice strategy checks out")
def test_c07_figure(solver):
    rep = verify_figure2(solver)
    assert rep.ok, [e for e in rep.entries if not e["ok"]]
    assert all(e["ok"] for e in rep.entries if e["kind"] == "alice wins")
    assert all(e["ok"] for e in rep.entries if e["kind"] == "arrows")
    terms = [e for e in rep.entries if e["kind"] == "terminal"]
    assert len(terms) == len(TERMINALS) == 5
    assert all(not e["choosable"] for e in terms)


def _demands(shape, top):
    per = [list(itertools.combinations_with_replacement(range(top, 0, -1), s)) for s in shape]
    seen = set()
    for combo in itertools.product(*per):
        key = tuple(sorted(zip(shape, combo)))
        if key not in seen:
            seen.add(key)
            yield combo


@pytest.mark.criterion(8, "choosability never exceeds paintability")
@pytest.mark.parametrize("shape", [s for s, _ in CHOICE_GOLDENS])
def test_c08_choice_below_paint(shape):
    solver = Solver()
    p = solver.paint_number(shape)
    assert choice_number(shape) <= p
    bob_wins = 0
    for demand in _demands(shape, p):
        if not solver.alice_wins(demand):
            bob_wins += 1
            assert is_f_choosable(shape, demand), demand
    assert bob_wins >= 1


# ---------------------------------------------------------------- oracles

def _random_instance(rng: random.Random) -> Instance:
    pot = rng.randint(1, 6)
    n = rng.randint(1, 8)
    sizes = []
    while sum(sizes) < n:
        sizes.append(rng.randint(1, n - sum(sizes)))
    parts = [tuple(rng.randint(1, (1 << pot) - 1) for _ in range(s)) for s in sizes]
    return Instance(pot, tuple(parts))


@pytest.mark.criterion(9, "oracle equivalence for coloring and SDRs")
def test_c09_oracles():
    rng = random.Random("acceptance:oracles")
    for _ in range(200):
        inst = _random_instance(rng)
        got = decide_colorable(inst)
        truth = colorable(as_sets(inst))
        assert (got is not None) == truth == brute_force_colorable(inst)
        if got is not None:
            assert check_coloring(inst, got)
    for _ in range(200):
        sets = [set(rng.sample(range(7), rng.randint(0, 4))) for _ in range(rng.randint(0, 6))]
        got = find_sdr(list(enumerate(sets)))
        assert (not isinstance(got, Violator)) == has_sdr(sets)


# ---------------------------------------------------------------- determinism

def _cli(args, tmp):
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "listcolor.cli", *args, "--json"],
                          capture_output=True, cwd=tmp, env=env)
    return proc.returncode, proc.stdout


@pytest.mark.criterion(10, "byte-identical JSON across runs and thread counts")
def test_c10_determinism(tmp_path):
    inst3 = random_precondition_instance(3, 3, random.Random(1)).to_json()
    inst4 = random_precondition_instance(4, 3, random.Random(2)).to_json()
    (tmp_path / "i3.json").write_text(inst3)
    (tmp_path / "i4.json").write_text(inst4)
    (tmp_path / "d.json").write_text(json.dumps({"parts": [[1, 2], [2, 2], [2]]}))
    commands = [
        ["choice", "--shape", "2,2,3"],
        ["choosable", "--shape", "3,3", "--size", "2", "--cert", "cert.json"],
        ["choosable", "--shape", "2,2,1", "--demand", "d.json"],
        ["color", "--instance", "i3.json", "--method", "constructive"],
        ["color", "--instance", "i4.json", "--method", "constructive"],
        ["color", "--instance", "i4.json", "--method", "search"],
        ["paint", "--shape", "2,2,3", "--size", "4", "--strategy", "s.json", "--memo", "m.bin"],
        ["paint-number", "--shape", "2,2,3"],
        ["gen", "example1", "--s", "3", "--k", "3", "-o", "e1.json"],
        ["gen", "example2", "--k", "2", "-o", "e2.json"],
        ["verify", "figure2"],
        ["verify", "theorem", "--s", "4", "--kmax", "3", "--samples", "20"],
        ["verify", "theorem", "--s", "3", "--kmax", "3", "--samples", "20"],
    ]
    side_files = ["cert.json", "s.json", "m.bin", "e1.json", "e2.json"]
    for cmd in commands:
        runs = []
        for extra in ([], [], ["--threads", "1"]):
            for f in side_files:
                (tmp_path / f).unlink(missing_ok=True)
            code, out = _cli(cmd + extra, tmp_path)
            files = {f: (tmp_path / f).read_bytes() for f in side_files if (tmp_path / f).exists()}
            runs.append((code, out, files))
        assert runs[0][0] in (0, 1), cmd
        json.loads(runs[0][1])
        assert runs[0] == runs[1] == runs[2], cmd
