"""Merge-and-SDR coloring of K_{4*k} with lists of size l(4,k).

Parts are sorted into seven classes. Each class fixes which same-part
vertices get merged: a triple, one pair, or two complementary pairs.
Guaranteed choices (pairs and extensions of SDRs) are found by bounded
search and re-checked numerically. A final SDR over every vertex of the
merged graph gives the coloring.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (Coloring, Instance, PartStats, ScheduleViolation, colors_of, l_formula,
                    lowest_colors, mask_of, part_stats, popcount, strip_common_parts)
from ..colorability import decide_colorable
from ..sdr import Violator, extend_sdr, find_sdr, hall_violator, is_sdr
from .plan import (PAIRS4, PARTITIONS4, TRIPLES4, FalsificationCertificate, MergePlan,
                   PreconditionViolated, Unreachable, check_preconditions, expand, rest_of,
                   vertex_family)
from .s3 import best_subset, h_select

CLASSES4 = ("U1", "U2", "U3", "U4", "R1", "R2", "R3")


def _cols(mask: int) -> tuple[int, ...]:
    return colors_of(mask)


def _mask(colors) -> int:
    return mask_of(colors)


def zdot_colors(stats: list[PartStats], plan: MergePlan) -> int:
    """Colors on the merged part of the designated U2 part (empty if none)."""
    z = plan.z_dot
    if z is None:
        return 0
    I = plan.pairs[z]
    return stats[z].L(I) | stats[z].W_of(rest_of(I, 4))


def hc_conditions(st: PartStats, J, k: int, g_size: int, c4: int, zw: int) -> dict:
    """Conditions (1)-(3) for the extra pair J of a U4 part whose colors are few."""
    LJ = st.L(J)
    out = {"pair": list(J), "outside_C4": bool(LJ & ~c4)}
    cond2 = True
    detail = []
    for v in rest_of(J, 4):
        w = popcount(LJ | st.lists[v])
        ok = w >= 2 * k - 1
        if w == 2 * k - 1:
            ok = popcount(LJ | st.lists[v] | zw | c4) >= 2 * k
        detail.append(w)
        cond2 = cond2 and ok
    out["pair_vertex_unions"] = detail
    out["pair_vertex_ok"] = cond2
    out["whole_union"] = popcount(st.W_of(rest_of(J, 4)) | LJ)
    out["whole_ok"] = out["whole_union"] >= g_size - 1
    out["ok"] = out["outside_C4"] and cond2 and out["whole_ok"]
    return out


def hc2_conditions(st: PartStats, T, J, k: int, u3: int, u4: int, c4: int) -> dict:
    """Conditions (1)-(3) for the extra pair J inside the triple T of a U4 part."""
    LJ = st.L(J)
    (w,) = rest_of(T, 4)
    inner = [v for v in T if v not in J]
    out = {"pair": list(J), "triple": list(T), "outside_C4": bool(LJ & ~c4)}
    out["inner_unions"] = [popcount(LJ | st.lists[v]) for v in inner]
    out["outer_union"] = popcount(LJ | st.lists[w])
    out["pair_vertex_ok"] = (all(x >= 2 * k for x in out["inner_unions"])
                             and out["outer_union"] >= 2 * k - 1 + u3)
    out["whole_union"] = popcount(LJ | st.W_of(rest_of(J, 4)))
    out["whole_ok"] = out["whole_union"] >= 2 * k + u4
    out["ok"] = out["outside_C4"] and out["pair_vertex_ok"] and out["whole_ok"]
    return out


def r3_sets(stats: list[PartStats], parts, c2: int):
    """A(X) and B(X) for parts in the third reserved class, relative to ``c2``."""
    A, B = {}, {}
    for x in parts:
        st = stats[x]
        a = st.N[2] & ~c2
        bset = 0
        for c in _cols(a):
            I = st.holders(c)
            if popcount(st.L(I) & ~c2) >= popcount(st.L(rest_of(I, 4)) & ~c2):
                bset |= 1 << c
        A[x], B[x] = a, bset
    return A, B


def g_size_of(plan: MergePlan) -> int:
    c = plan.count
    return (2 * c("U1") + 2 * c("U2") + 3 * c("U3") + 4 * c("U4")
            + 2 * c("R1") + 2 * c("R2") + 3 * c("R3"))


def build_merge_plan_s4(inst: Instance) -> MergePlan:
    k = inst.k
    if k < 2:
        raise PreconditionViolated("need at least two parts")
    l = l_formula(4, k)
    check_preconditions(inst, 4, l)
    stats = [part_stats(inst, i) for i in range(k)]
    plan = MergePlan(s=4, k=k, l=l, b=k % 2)
    plan.classes = {name: [] for name in CLASSES4}
    cap_u, cap_r = 2 * k - l, l - k

    def fail(step, detail, **extra):
        raise FalsificationCertificate(step, detail, {
            "instance": inst.to_json_obj(), "plan": plan.to_json_obj(), **extra})

    def L(x, I):
        return stats[x].L(I)

    def fam(tags_parts):
        return [(t, _cols(L(x, I))) for t, x, I in tags_parts]

    remaining = list(range(k))

    # unreserved parts splitting into two rich complementary pairs
    for x in remaining:
        if len(plan.classes["U1"]) == cap_u:
            break
        for I in PAIRS4:
            if stats[x].l(I) >= k and stats[x].l(rest_of(I, 4)) >= k:
                plan.classes["U1"].append(x)
                plan.pairs[x] = I
                break
    u1 = plan.count("U1")
    remaining = [x for x in remaining if x not in plan.classes["U1"]]

    # unreserved parts with a rich triple
    U2 = h_select(remaining, lambda x: stats[x].mu[3], lambda m: m, cap_u - u1)
    plan.classes["U2"] = U2
    u2 = len(U2)
    for x in U2:
        plan.pairs[x] = best_subset(stats[x], TRIPLES4, lambda st, I: st.l(I))
    plan.z_dot = U2[0] if U2 else None
    remaining = [x for x in remaining if x not in U2]

    # reserved parts whose triple colors extend to an SDR (matroid greedy)
    base = [(f"I{x}", _cols(L(x, plan.pairs[x]))) for x in U2]
    if isinstance(find_sdr(base), Violator):
        fail("U2 SDR", "merged triples of U2 have no SDR")
    R1: list[int] = []
    for x in remaining:
        if len(R1) == cap_r:
            break
        trial = base + [(f"I{x}", _cols(stats[x].N[3]))]
        if not isinstance(find_sdr(trial), Violator):
            base = trial
            R1.append(x)
    f1 = find_sdr(base)
    plan.classes["R1"] = R1
    r1 = len(R1)
    for x in R1:
        plan.pairs[x] = stats[x].holders(f1[f"I{x}"])
    plan.sdrs["f1"] = dict(f1)
    remaining = [x for x in remaining if x not in R1]

    # unreserved parts with a rich pair
    U3 = h_select(remaining, lambda x: stats[x].mu[2], lambda m: l - k + u2 + m,
                  cap_u - u1 - u2)
    plan.classes["U3"] = U3
    u3 = len(U3)
    for x in U3:
        plan.pairs[x] = best_subset(
            stats[x], PAIRS4, lambda st, I: (st.l(I), st.l(I) - st.l(rest_of(I, 4))))
    f2 = extend_sdr(f1, fam((f"I{x}", x, plan.pairs[x]) for x in U3))
    if isinstance(f2, Violator):
        fail("U3 SDR", f"f1 does not extend over U3: {f2}")
    plan.sdrs["f2"] = dict(f2)
    remaining = [x for x in remaining if x not in U3]

    # reserved parts with many doubly-listed colors
    R2 = h_select(remaining, lambda x: stats[x].sigma[2] - stats[x].sigma[3],
                  lambda m: 5 * (l - k) + 2 * u1 + 2 * u2 + u3 + r1 + m, cap_r - r1)
    plan.classes["R2"] = R2
    r2 = len(R2)
    remaining = [x for x in remaining if x not in R2]

    # remaining reserved parts: pairs through the sets B(X)
    R3 = remaining[:cap_r - r1 - r2]
    plan.classes["R3"] = R3
    r3 = len(R3)
    c2 = _mask(f2.values())
    A3, B3 = r3_sets(stats, R3, c2)
    f3 = extend_sdr(f2, [(f"I{x}", _cols(B3[x])) for x in R3])
    if isinstance(f3, Violator):
        fail("R3 pairs", f"sets B(X) have no SDR: {f3}",
             B={str(x): list(_cols(B3[x])) for x in R3})
    for x in R3:
        plan.pairs[x] = stats[x].holders(f3[f"I{x}"])
    plan.sdrs["f3"] = dict(f3)
    remaining = [x for x in remaining if x not in R3]
    plan.classes["U4"] = remaining
    u4 = len(remaining)

    # complementary pairs for U1, then R2
    g = extend_sdr(f3, fam([t for x in plan.classes["U1"] for t in (
        (f"I{x}", x, plan.pairs[x]), (f"Ibar{x}", x, rest_of(plan.pairs[x], 4)))]))
    if isinstance(g, Violator):
        fail("U1 pairs", f"f3 does not extend over U1 pairs: {g}")
    cg = _mask(g.values())
    for x in R2:
        A = stats[x].N[2] & ~cg
        cands = []
        for I, J in PARTITIONS4:
            a, b = popcount(L(x, I) & A), popcount(L(x, J) & A)
            cands.append({"partition": [list(I), list(J)], "counts": [a, b],
                          "ok": a >= r2 and b >= r2})
        plan.records.append({"step": "R2 pairs", "part": x, "candidates": cands})
        hit = next((c for c in cands if c["ok"]), None)
        if hit is None:
            fail("R2 pairs", f"part {x} has no partition with {r2} available colors on both sides",
                 candidates=cands)
        I, J = (tuple(p) for p in hit["partition"])
        if popcount(L(x, J) & A) > popcount(L(x, I) & A):
            I, J = J, I
        plan.pairs[x] = I
    f4 = extend_sdr(g, fam([t for x in R2 for t in (
        (f"I{x}", x, plan.pairs[x]), (f"Ibar{x}", x, rest_of(plan.pairs[x], 4)))]))
    if isinstance(f4, Violator):
        fail("R2 pairs", f"g does not extend over R2 pairs: {f4}")
    plan.sdrs["f4"] = dict(f4)

    # merged vertices of G'
    for name in ("U1", "U2", "U3", "R1", "R2", "R3"):
        for x in plan.classes[name]:
            plan.merged[f"I{x}"] = (x, plan.pairs[x])
            if name in ("U1", "R2"):
                plan.merged[f"Ibar{x}"] = (x, rest_of(plan.pairs[x], 4))
    plan.g_size = g_size_of(plan)
    f = dict(f4)

    if plan.b == 1:
        f = _extra_merge(inst, stats, plan, f2, f4, fail)
    plan.sdrs["f"] = f

    hfam = vertex_family(inst, plan)
    res = find_sdr(hfam)
    if isinstance(res, Violator):
        bad = hall_violator(hfam)
        fail("final SDR", "merged graph violates Hall's condition",
             violator={"tags": list(bad.tags), "union": sorted(bad.union)})
    plan.final = res
    return plan


def special_cases(stats, plan: MergePlan) -> dict:
    """Which of the three extra-merge triggers apply, evaluated on G'."""
    k = plan.k
    c = plan.count
    u1, u2, r1, r2, u4 = c("U1"), c("U2"), c("R1"), c("R2"), c("U4")
    a = [x for x in plan.classes["U4"] if popcount(stats[x].W) < plan.g_size]
    b = []
    if u1 == 0 and r2 == 0:
        b = [y for y in plan.classes["R3"] if popcount(stats[y].W) <= 3 * k - 1 - u2 - r1]
    zw = zdot_colors(stats, plan)
    cc = []
    for x in plan.classes["U4"]:
        for T in TRIPLES4:
            if popcount(stats[x].W_of(T) | zw) <= 2 * k + u4 - 1 < popcount(stats[x].W):
                cc.append((x, T))
    return {"a": a, "b": b, "c": cc}


def _extra_merge(inst, stats, plan: MergePlan, f2, f4, fail):
    k = plan.k
    c = plan.count
    u1, u2, u3, u4 = c("U1"), c("U2"), c("U3"), c("U4")
    r1, r2, r3 = c("R1"), c("R2"), c("R3")
    c4 = _mask(f4.values())
    zw = zdot_colors(stats, plan)
    if plan.z_dot is None:
        plan.records.append({"step": "extra merge", "note": "no designated U2 part; its colors read as empty"})
    trig = special_cases(stats, plan)
    plan.records.append({"step": "extra merge triggers",
                         "a": trig["a"], "b": trig["b"], "c": [[x, list(T)] for x, T in trig["c"]]})
    if trig["a"] and trig["b"]:
        fail("extra merge", "cases (a) and (b) both apply")

    if trig["a"]:
        x = trig["a"][0]
        if not (u1 == 0 and r3 == 0 and u2 + u3 >= 1):
            fail("extra merge (a)", f"part {x}: expected u1=0=r3 and u2+u3>=1",
                 counts=[u1, r3, u2 + u3])
        cands = []
        chosen = None
        for J in PAIRS4:
            cond = hc_conditions(stats[x], J, k, plan.g_size, c4, zw)
            ext = extend_sdr(f4, [(f"J{x}", _cols(stats[x].L(J)))])
            cond["extends"] = not isinstance(ext, Violator)
            cond["ok"] = cond["ok"] and cond["extends"]
            cands.append(cond)
            if cond["ok"] and chosen is None:
                chosen = (J, ext)
        plan.records.append({"step": "extra merge (a)", "part": x, "candidates": cands})
        if chosen is None:
            fail("extra merge (a)", f"part {x} has no admissible pair", candidates=cands)
        J, ext = chosen
        plan.special.update({"u_dot": 1, "case": "a", "part": x, "pair": list(J)})
        plan.merged[f"J{x}"] = (x, J)
        return dict(ext)

    if trig["b"]:
        y = trig["b"][0]
        return _extra_reserved(stats, plan, y, f2, fail)

    if trig["c"]:
        x, T = trig["c"][0]
        if u1 != 0:
            fail("extra merge (c)", f"part {x}: expected u1=0", counts=[u1])
        cands = []
        chosen = None
        for J in ((T[0], T[1]), (T[0], T[2]), (T[1], T[2])):
            cond = hc2_conditions(stats[x], T, J, k, u3, u4, c4)
            ext = extend_sdr(f4, [(f"J{x}", _cols(stats[x].L(J)))])
            cond["extends"] = not isinstance(ext, Violator)
            cond["ok"] = cond["ok"] and cond["extends"]
            cands.append(cond)
            if cond["ok"] and chosen is None:
                chosen = (J, ext)
        plan.records.append({"step": "extra merge (c)", "part": x, "candidates": cands})
        if chosen is None:
            fail("extra merge (c)", f"part {x} has no admissible pair", candidates=cands)
        J, ext = chosen
        plan.special.update({"u_ddot": 1, "case": "c", "part": x, "pair": list(J),
                             "triple": list(T)})
        plan.merged[f"J{x}"] = (x, J)
        return dict(ext)
    return dict(f4)


def partition_grades(stats, plan: MergePlan, y: int, c2: int, B: dict) -> list[dict]:
    """Good/strong status of the three pair partitions of a reserved part."""
    R3 = plan.classes["R3"]
    r3 = len(R3)
    others = [z for z in R3 if z != y]
    z = others[0] if others else None
    st = stats[y]
    out = []
    for I, J in PARTITIONS4:
        a, b = st.L(I) & ~c2, st.L(J) & ~c2
        good = a != 0 and b != 0
        weak = (r3 >= 2 and z is not None and (a | b) & ~B[z] == 0
                and popcount(B[z]) == r3)
        out.append({"partition": [list(I), list(J)], "lprime": [popcount(a), popcount(b)],
                    "good": good, "strong": not weak})
    return out


def _extra_reserved(stats, plan: MergePlan, y: int, f2, fail):
    c2 = _mask(f2.values())
    R3 = plan.classes["R3"]
    _, B = r3_sets(stats, R3, c2)
    grades = partition_grades(stats, plan, y, c2, B)
    plan.records.append({"step": "extra merge (b)", "part": y, "candidates": grades})
    st = stats[y]
    for g in grades:
        if not (g["good"] and g["strong"]):
            continue
        I, J = (tuple(p) for p in g["partition"])
        if popcount(st.L(J) & ~c2) > popcount(st.L(I) & ~c2):
            I, J = J, I
        fam = [(f"I{z}", _cols(B[z])) for z in R3 if z != y]
        fam += [(f"I{y}", _cols(st.L(I) & ~c2)), (f"Ibar{y}", _cols(st.L(J) & ~c2))]
        ext = extend_sdr(f2, fam)
        if isinstance(ext, Violator):
            fail("extra merge (b)", f"good strong partition of part {y} does not extend f2",
                 candidates=grades)
        for z in R3:
            if z != y:
                plan.pairs[z] = stats[z].holders(ext[f"I{z}"])
                plan.merged[f"I{z}"] = (z, plan.pairs[z])
        plan.pairs[y] = I
        plan.merged[f"I{y}"] = (y, I)
        plan.merged[f"Ibar{y}"] = (y, J)
        f3 = {t: c for t, c in ext.items() if t != f"Ibar{y}"}
        plan.sdrs["f3"] = f3
        plan.sdrs["f4"] = dict(f3)
        plan.special.update({"r_dot": 1, "case": "b", "part": y, "pair": list(J)})
        return dict(ext)
    fail("extra merge (b)", f"part {y} has no good strong partition", candidates=grades)


# ---------------------------------------------------------------- verification

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))

    def to_json_obj(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]}


def _staged(inst, plan: MergePlan, tags) -> list:
    out = []
    for t in tags:
        part, slots = plan.merged[t] if t in plan.merged else (None, None)
        if part is None:
            return None
        out.append((t, _cols(part_stats(inst, part).L(slots))))
    return out


def _extends(big: dict, small: dict) -> bool:
    return all(big.get(t) == c for t, c in small.items())


def verify_merge_plan(inst: Instance, plan: MergePlan) -> VerifyReport:
    """Re-evaluate every side condition the construction relies on."""
    rep = VerifyReport()
    k, l = inst.k, l_formula(4, inst.k)
    stats = [part_stats(inst, i) for i in range(k)]
    cl = {name: list(plan.classes.get(name, [])) for name in CLASSES4}
    u1, u2, u3, u4 = (len(cl[n]) for n in ("U1", "U2", "U3", "U4"))
    r1, r2, r3 = (len(cl[n]) for n in ("R1", "R2", "R3"))
    members = sorted(x for v in cl.values() for x in v)
    rep.add("classes partition the parts", members == list(range(k)), f"{members}")
    rep.add("unreserved count", u1 + u2 + u3 + u4 == 2 * k - l, f"{u1}+{u2}+{u3}+{u4} vs {2 * k - l}")
    rep.add("reserved count", r1 + r2 + r3 == l - k, f"{r1}+{r2}+{r3} vs {l - k}")
    rep.add("parity", plan.b == k % 2 and plan.l == l and plan.k == k, f"b={plan.b}")
    for x, st in enumerate(stats):
        lhs = st.n[2] + 2 * st.n[3]
        rep.add(f"small pot bound part {x}", lhs >= 4 * (l - k) + 1, f"{lhs} >= {4 * (l - k) + 1}")

    def pair_ok(x, size):
        I = plan.pairs.get(x)
        return I is not None and len(I) == size and len(set(I)) == size and all(0 <= j < 4 for j in I)

    # merged vertices must be the recorded subsets
    for tag, (part, slots) in sorted(plan.merged.items()):
        I = plan.pairs.get(part)
        if tag == f"I{part}":
            ok = I is not None and tuple(sorted(slots)) == tuple(sorted(I))
        elif tag == f"Ibar{part}":
            ok = I is not None and tuple(sorted(slots)) == rest_of(I, 4)
        else:
            sp = plan.special
            ok = (tag == f"J{part}" and sp.get("part") == part
                  and tuple(sorted(slots)) == tuple(sorted(sp.get("pair") or ())))
        rep.add(f"merged vertex {tag}", ok, f"slots {slots} pair {I}")

    # U1
    for x in cl["U1"]:
        ok = pair_ok(x, 2)
        I = plan.pairs.get(x, ())
        ok = ok and stats[x].l(I) >= k and stats[x].l(rest_of(I, 4)) >= k
        rep.add(f"U1 eligibility part {x}", ok, f"pair {I}")
    rep.add("U1 size", u1 <= 2 * k - l)
    if u1 < 2 * k - l:
        for x in range(k):
            if x in cl["U1"]:
                continue
            worst = max(min(stats[x].l(I), stats[x].l(rest_of(I, 4))) for I in PAIRS4)
            rep.add(f"U1 maximality part {x}", worst <= k - 1, f"best min pair size {worst}")

    # U2
    rep.add("U2 size", u2 <= 2 * k - l - u1)
    for x in cl["U2"]:
        I = plan.pairs.get(x, ())
        ok = pair_ok(x, 3) and u2 <= stats[x].mu[3] and stats[x].l(I) == stats[x].mu[3]
        rep.add(f"U2 threshold part {x}", ok, f"mu3={stats[x].mu[3]} u2={u2} l(I)={stats[x].l(I)}")
    rep.add("designated U2 part", (plan.z_dot in cl["U2"]) if u2 else plan.z_dot is None)
    if u1 + u2 < 2 * k - l:
        for x in cl["U3"] + cl["U4"] + cl["R1"] + cl["R2"] + cl["R3"]:
            rep.add(f"U2 maximality part {x}", stats[x].mu[3] <= u2, f"mu3={stats[x].mu[3]} u2={u2}")

    def staged_sdr(name, tags, base_name=None):
        f = plan.sdrs.get(name)
        fam = _staged(inst, plan, tags)
        if f is None or fam is None:
            rep.add(f"{name} is an SDR", False, "missing")
            return {}
        ok = is_sdr(f, fam)
        if base_name is not None:
            ok = ok and _extends(f, plan.sdrs.get(base_name, {}))
        rep.add(f"{name} is an SDR", ok, f"range {sorted(f.values())}")
        return f

    # R1
    rep.add("R1 size", r1 <= l - k)
    for x in cl["R1"]:
        rep.add(f"R1 triple part {x}", pair_ok(x, 3))
    f1 = staged_sdr("f1", [f"I{x}" for x in cl["U2"] + cl["R1"]])
    c1 = _mask(f1.values())
    if r1 < l - k:
        for x in cl["U3"] + cl["U4"] + cl["R2"] + cl["R3"]:
            rep.add(f"R1 maximality part {x}", stats[x].N[3] & ~c1 == 0,
                    f"triple colors {_cols(stats[x].N[3])} vs C1 {_cols(c1)}")

    # U3
    rep.add("U3 size", u3 <= 2 * k - l - u1 - u2)
    for x in cl["U3"]:
        st = stats[x]
        I = plan.pairs.get(x, ())
        ok = pair_ok(x, 2) and l - k + u2 + u3 <= st.mu[2] and st.l(I) == st.mu[2]
        best_delta = max(st.l(P) - st.l(rest_of(P, 4)) for P in PAIRS4 if st.l(P) == st.mu[2])
        ok = ok and st.l(I) - st.l(rest_of(I, 4)) == best_delta
        rep.add(f"U3 threshold part {x}", ok, f"mu2={st.mu[2]} need {l - k + u2 + u3}")
    if u1 + u2 + u3 < 2 * k - l:
        for x in cl["U4"] + cl["R2"] + cl["R3"]:
            rep.add(f"U3 maximality part {x}", stats[x].mu[2] <= l - k + u2 + u3,
                    f"mu2={stats[x].mu[2]} bound {l - k + u2 + u3}")
    f2 = staged_sdr("f2", [f"I{x}" for x in cl["U2"] + cl["R1"] + cl["U3"]], "f1")
    c2 = _mask(f2.values())

    # R2
    rep.add("R2 size", r2 <= l - k - r1)
    bound = 5 * (l - k) + 2 * u1 + 2 * u2 + u3 + r1 + r2
    for x in cl["R2"]:
        v = stats[x].sigma[2] - stats[x].sigma[3]
        rep.add(f"R2 threshold part {x}", v >= bound, f"{v} >= {bound}")
    if r1 + r2 < l - k:
        for x in cl["U4"] + cl["R3"]:
            v = stats[x].sigma[2] - stats[x].sigma[3]
            rep.add(f"R2 maximality part {x}", v <= bound, f"{v} <= {bound}")

    # R3
    for x in cl["R3"]:
        I = plan.pairs.get(x, ())
        ok = pair_ok(x, 2)
        a, b = popcount(stats[x].L(I) & ~c2), popcount(stats[x].L(rest_of(I, 4)) & ~c2)
        rep.add(f"R3 pair part {x}", ok and a >= b, f"l'(I)={a} l'(Ibar)={b}")
    f3 = staged_sdr("f3", [f"I{x}" for x in cl["U2"] + cl["R1"] + cl["U3"] + cl["R3"]], "f2")
    for x in cl["R2"]:
        rep.add(f"R2 pair part {x}", pair_ok(x, 2))
    tags4 = [f"I{x}" for x in cl["U2"] + cl["R1"] + cl["U3"] + cl["R3"]]
    tags4 += [t for x in cl["U1"] + cl["R2"] for t in (f"I{x}", f"Ibar{x}")]
    staged_sdr("f4", tags4, "f3")
    f4 = plan.sdrs.get("f4", {})
    rep.add("merged graph size", plan.g_size == g_size_of(plan), f"{plan.g_size}")

    # extra merge
    sp = plan.special
    flags = [sp.get("u_dot", 0), sp.get("r_dot", 0), sp.get("u_ddot", 0)]
    rep.add("extra merge flags", sum(flags) <= 1 and (plan.b == 1 or sum(flags) == 0),
            f"flags {flags} b={plan.b}")
    extra_tags = []
    if plan.b == 1 and sum(flags) <= 1:
        trig = special_cases(stats, plan)
        if sp.get("case") == "b":
            # reserved pair counts were taken before the extra merge
            pass
        expect = "a" if trig["a"] else "b" if trig["b"] else "c" if trig["c"] else None
        rep.add("extra merge case order", sp.get("case") == expect,
                f"fired {sp.get('case')} expected {expect}")
        rep.add("cases (a) and (b) not both applicable", not (trig["a"] and trig["b"]))
        c4 = _mask(f4.values())
        zw = zdot_colors(stats, plan)
        x = sp.get("part")
        if sp.get("case") == "a":
            J = tuple(sp["pair"])
            cond = hc_conditions(stats[x], J, k, plan.g_size, c4, zw)
            rep.add("extra pair (a) conditions", cond["ok"] and x == trig["a"][0], str(cond))
            rep.add("extra pair (a) counts", u1 == 0 and r3 == 0 and u2 + u3 >= 1)
            extra_tags = [f"J{x}"]
        elif sp.get("case") == "c":
            J, T = tuple(sp["pair"]), tuple(sp["triple"])
            cond = hc2_conditions(stats[x], T, J, k, u3, u4, c4)
            rep.add("extra pair (c) conditions", cond["ok"] and (x, T) == trig["c"][0], str(cond))
            extra_tags = [f"J{x}"]
        elif sp.get("case") == "b":
            I = plan.pairs[x]
            a = popcount(stats[x].L(I) & ~c2)
            b = popcount(stats[x].L(rest_of(I, 4)) & ~c2)
            rep.add("extra pair (b) orientation", a >= b and x == trig["b"][0], f"{a} >= {b}")
            extra_tags = [f"Ibar{x}"]
    fam = _staged(inst, plan, tags4 + extra_tags)
    f = plan.sdrs.get("f", {})
    ok = fam is not None and is_sdr(f, fam)
    ok = ok and _extends(f, f2 if sp.get("case") == "b" else f4)
    rep.add("f is an SDR of all merged vertices", ok)
    hfam = vertex_family(inst, plan)
    rep.add("final SDR over the merged graph", is_sdr(plan.final, hfam))
    return rep


# ---------------------------------------------------------------- driver

@dataclass
class ColoringOutcome:
    coloring: Coloring
    route: str
    plan: MergePlan | None = None


def rainbow_coloring(inst: Instance) -> Coloring | None:
    res = find_sdr([((i, j), _cols(m)) for i, p in enumerate(inst.parts) for j, m in enumerate(p)])
    if isinstance(res, Violator):
        return None
    return dict(sorted(res.items()))


def solve_K4k(inst: Instance) -> ColoringOutcome:
    """Color a K_{4*k} instance with lists of size at least l(4,k)."""
    if any(len(p) != 4 for p in inst.parts):
        raise PreconditionViolated(f"shape must be K_{{4*k}}, got {inst.shape}")
    k = inst.k
    l = l_formula(4, k)
    if any(popcount(m) < l for p in inst.parts for m in p):
        raise PreconditionViolated(f"every list needs at least {l} colors")
    trimmed = Instance(inst.pot, tuple(tuple(lowest_colors(m, l) for m in p) for p in inst.parts))
    schedule = [l_formula(4, k - r) for r in range(k)]
    try:
        stripped = strip_common_parts(trimmed, schedule)
    except ScheduleViolation as exc:  # pragma: no cover - removal costs one color per list
        raise FalsificationCertificate("preprocessing", str(exc), {"instance": inst.to_json_obj()})
    col = dict(stripped.coloring)
    res = stripped.residual
    if res is None:
        return ColoringOutcome(dict(sorted(col.items())), "stripped")

    def lift(sub: Coloring):
        for (i, j), c in sub.items():
            col[(stripped.kept[i], j)] = c
        return dict(sorted(col.items()))

    if res.k == 1:
        return ColoringOutcome(lift({(0, j): _cols(m)[0] for j, m in enumerate(res.parts[0])}),
                               "single part")
    if res.pot_size >= 4 * res.k:
        sub = rainbow_coloring(res)
        if sub is not None:
            return ColoringOutcome(lift(sub), "rainbow")
        sub = decide_colorable(res)
        if sub is None:
            raise Unreachable(f"no coloring found for {res.to_json()}")
        return ColoringOutcome(lift(sub), "search")
    plan = build_merge_plan_s4(res)
    return ColoringOutcome(lift(expand(res, plan, plan.final)), "merge", plan)


def color_K4k(inst: Instance) -> Coloring:
    return solve_K4k(inst).coloring
