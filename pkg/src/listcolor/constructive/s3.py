"""Merge-and-SDR coloring of K_{3*k} with lists of size l(3,k)."""
from __future__ import annotations

from itertools import combinations

from ..core import Coloring, Instance, colors_of, l_formula, part_stats, popcount
from ..sdr import Violator, find_sdr, hall_violator
from .plan import (FalsificationCertificate, MergePlan, check_preconditions, expand,
                   rest_of, vertex_family)

PAIRS3 = tuple(combinations(range(3), 2))


def h_select(cands, value, threshold, cap: int) -> list[int]:
    """Largest m <= cap such that the m best parts by ``value`` all reach ``threshold(m)``.

    Ties go to the lower part index; the result is sorted by index.
    """
    ranked = sorted(cands, key=lambda x: (-value(x), x))
    m = 0
    for size in range(1, min(cap, len(ranked)) + 1):
        if value(ranked[size - 1]) >= threshold(size):
            m = size
    return sorted(ranked[:m])


def best_subset(stats, subsets, key):
    """First subset (in the given order) maximizing ``key``."""
    best = None
    for sub in subsets:
        v = key(stats, sub)
        if best is None or v > best[0]:
            best = (v, sub)
    return best[1]


def build_merge_plan_s3(inst: Instance) -> MergePlan:
    k = inst.k
    l = l_formula(3, k)
    check_preconditions(inst, 3, l)
    stats = [part_stats(inst, i) for i in range(k)]
    plan = MergePlan(s=3, k=k, l=l, b=k % 2)

    def fail(step, detail):
        raise FalsificationCertificate(step, detail, {
            "instance": inst.to_json_obj(), "plan": plan.to_json_obj()})

    unreserved = list(range(2 * k - l))
    reserved = list(range(2 * k - l, k))
    u1 = h_select(unreserved, lambda x: stats[x].mu[2], lambda m: m, len(unreserved))
    u2 = [x for x in unreserved if x not in u1]
    plan.classes = {"U1": u1, "U2": u2, "R": reserved}
    for x in u1:
        plan.pairs[x] = best_subset(stats[x], PAIRS3, lambda st, I: st.l(I))
        if stats[x].l(plan.pairs[x]) < len(u1):
            fail("U1", f"part {x} has no pair with at least {len(u1)} common colors")

    # greedy SDR: merged U1 pairs first, then one doubly-listed color per reserved part
    f: dict[str, int] = {}
    used: set[int] = set()
    order = [(x, stats[x].L(plan.pairs[x])) for x in u1] + [(x, stats[x].N[2]) for x in reserved]
    for x, mask in order:
        free = [c for c in colors_of(mask) if c not in used]
        if not free:
            fail("greedy SDR", f"no free color for part {x}")
        f[f"I{x}"] = free[0]
        used.add(free[0])
    for x in reserved:
        plan.pairs[x] = stats[x].holders(f[f"I{x}"])
    for x in u1 + reserved:
        plan.merged[f"I{x}"] = (x, plan.pairs[x])
    plan.sdrs["f"] = f
    plan.g_size = 3 * len(u2) + 2 * (len(u1) + len(reserved))

    fam = vertex_family(inst, plan)
    res = find_sdr(fam)
    if isinstance(res, Violator):
        bad = hall_violator(fam)
        raise FalsificationCertificate("final SDR", f"Hall violator {bad}", {
            "instance": inst.to_json_obj(), "plan": plan.to_json_obj(),
            "violator": {"tags": list(bad.tags), "union": sorted(bad.union)}})
    plan.final = res
    return plan


def color_K3k(inst: Instance) -> Coloring:
    """L-coloring of K_{3*k} under the small-pot, no-common-color preconditions."""
    if inst.k == 1:
        check_preconditions(inst, 3, l_formula(3, 1))
        return {(0, j): colors_of(m)[0] for j, m in enumerate(inst.parts[0])}
    plan = build_merge_plan_s3(inst)
    return expand(inst, plan, plan.final)


__all__ = ["build_merge_plan_s3", "color_K3k", "h_select", "best_subset", "rest_of", "popcount"]
