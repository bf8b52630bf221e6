"""Constructive colorings of K_{3*k} and K_{4*k} by merging and SDRs."""
from .harness import claim_one_holds, random_precondition_instance, run_harness
from .plan import (FalsificationCertificate, MergePlan, PreconditionViolated, Unreachable,
                   expand, graph_vertices)
from .s3 import build_merge_plan_s3, color_K3k
from .s4 import (Check, ColoringOutcome, VerifyReport, build_merge_plan_s4, color_K4k,
                 solve_K4k, verify_merge_plan)

__all__ = [
    "FalsificationCertificate", "MergePlan", "PreconditionViolated", "Unreachable", "expand",
    "graph_vertices", "build_merge_plan_s3", "color_K3k", "build_merge_plan_s4", "color_K4k",
    "solve_K4k", "verify_merge_plan", "Check", "VerifyReport", "ColoringOutcome",
    "claim_one_holds", "random_precondition_instance", "run_harness",
]
