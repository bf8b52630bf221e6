"""Random instances meeting the constructive preconditions, and a batch runner."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from ..colorability import check_coloring
from ..core import Instance, l_formula, mask_of
from .plan import PARTITIONS4, FalsificationCertificate


def random_precondition_instance(s: int, k: int, rng: random.Random,
                                 pot: int | None = None) -> Instance:
    """Uniform lists of size l(s,k), pot at most sk-1, no part with a common color."""
    l = l_formula(s, k)
    # s lists avoid a common color only if their complements cover the pot
    lo = max(l + 1, -(-s * l // (s - 1)))
    if pot is None:
        pot = rng.randint(lo, s * k - 1)
    if not lo <= pot <= s * k - 1:
        raise ValueError(f"pot {pot} outside [{lo}, {s * k - 1}]")
    parts = []
    for _ in range(k):
        while True:
            lists = [mask_of(rng.sample(range(pot), l)) for _ in range(s)]
            common = -1
            for m in lists:
                common &= m
            if not common:
                break
        parts.append(tuple(lists))
    return Instance(pot, tuple(parts))


def claim_one_holds() -> bool:
    """For one pair from each pair-partition of a 4-set, some element is in all or none."""
    for choice in product(*[[0, 1]] * 3):
        picked = [set(PARTITIONS4[i][c]) for i, c in enumerate(choice)]
        if not any(all(v in p for p in picked) or all(v not in p for p in picked)
                   for v in range(4)):
            return False
    return True


@dataclass
class HarnessReport:
    s: int
    k: int
    samples: int
    valid: int = 0
    certificates: list = field(default_factory=list)
    invalid: list = field(default_factory=list)
    routes: dict = field(default_factory=dict)
    failed_checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.valid == self.samples and not self.certificates
                and not self.invalid and not self.failed_checks)

    def to_json_obj(self) -> dict:
        return {"s": self.s, "k": self.k, "samples": self.samples, "valid": self.valid,
                "certificates": self.certificates, "invalid": self.invalid,
                "routes": dict(sorted(self.routes.items())),
                "failed_checks": self.failed_checks, "ok": self.ok}


def run_harness(s: int, k: int, samples: int, seed: int = 0, verify: bool = True) -> HarnessReport:
    from .s3 import color_K3k
    from .s4 import solve_K4k, verify_merge_plan

    rng = random.Random(f"{s}:{k}:{seed}")
    rep = HarnessReport(s, k, samples)
    for _ in range(samples):
        inst = random_precondition_instance(s, k, rng)
        try:
            if s == 3:
                col, route, plan = color_K3k(inst), "merge", None
            else:
                out = solve_K4k(inst)
                col, route, plan = out.coloring, out.route, out.plan
        except FalsificationCertificate as exc:
            rep.certificates.append(exc.to_json())
            continue
        rep.routes[route] = rep.routes.get(route, 0) + 1
        if plan is not None and plan.special.get("case"):
            key = "extra " + plan.special["case"]
            rep.routes[key] = rep.routes.get(key, 0) + 1
        if not check_coloring(inst, col):
            rep.invalid.append(inst.to_json())
            continue
        rep.valid += 1
        if verify and plan is not None and s == 4:
            vr = verify_merge_plan(inst, plan)
            if not vr.ok:
                rep.failed_checks.append({"instance": inst.to_json_obj(),
                                          "checks": [c.name for c in vr.failed()]})
    return rep
