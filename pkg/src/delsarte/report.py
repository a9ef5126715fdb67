"""The full invariant pipeline for one quotient.

T(alpha) is reported as Tors Am(alpha): the two are Q/Z-dual finite abelian
groups, hence isomorphic, with the same invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any

from .cyclic import verify_cyclic
from .fundamental_group import pi1
from .linalg import AbelianGroupStructure
from .modules import (
    all_torsion_bounds,
    best_torsion_bound,
    module_rank_torsion,
    present_Am,
    present_Bprime,
)
from .quotient import FiniteQuotient, classify, subgroup_orders


class ReportAssertionError(AssertionError):
    """A hard invariant failed; ``bundle`` holds the diagnostic data."""

    def __init__(self, message: str, bundle: dict):
        super().__init__(message)
        self.bundle = bundle


def _dominates(big: AbelianGroupStructure, small: AbelianGroupStructure) -> bool:
    """k-th largest factor of ``small`` divides the k-th largest of ``big``."""
    b = list(reversed(big.torsion_factors))
    s = list(reversed(small.torsion_factors))
    return len(s) <= len(b) and all(x % y == 0 for x, y in zip(b, s))


def _factors(g: AbelianGroupStructure) -> list[int]:
    return list(g.torsion_factors)


@dataclass
class InvariantReport:
    quotient: FiniteQuotient
    data: dict

    def to_dict(self) -> dict:
        return self.data

    @property
    def torsion(self) -> list[int]:
        return self.data["torsion_T"]

    @property
    def pi1_order(self) -> int:
        return self.data["pi1"]["order"]


def analyze(q: FiniteQuotient, all_permutation_bounds: bool = False) -> InvariantReport:
    cls = classify(q)
    so = subgroup_orders(q)
    delta = so.delta
    p1 = pi1(q)

    am_rank, am_torsion = module_rank_torsion(present_Am(q))
    bp_rank, bp_torsion = module_rank_torsion(present_Bprime(q))
    order = q.order
    rank_snf = am_rank - order + 1
    rank_formula = sum(so.g_ij.values()) + sum(so.g_i.values()) - 3 - delta
    exp_bound = q.exponent ** 3 // order
    bounds = all_torsion_bounds(q)
    best = best_torsion_bound(q, bounds)
    t_order = am_torsion.order

    def bundle():
        return {
            "am_rank": am_rank,
            "kernel": q.kernel_matrix,
            "rank_formula": rank_formula,
            "subgroup_orders": so.to_dict(),
            "torsion_T": _factors(am_torsion),
        }

    if rank_snf != rank_formula:
        raise ReportAssertionError(f"rank K: SNF gives {rank_snf}, formula gives {rank_formula}", bundle())
    if am_torsion.length > 6 + delta:
        raise ReportAssertionError(f"length of T exceeds 6 + delta = {6 + delta}", bundle())
    if exp_bound % am_torsion.exponent:
        raise ReportAssertionError(f"exp T does not divide (exp G)^3/|G| = {exp_bound}", bundle())
    for b in bounds:
        if b.bound_order % t_order:
            raise ReportAssertionError(
                f"|T| = {t_order} does not divide the bound {b.bound_order} for {b.permutation}", bundle()
            )
    if not _dominates(bp_torsion, am_torsion):
        raise ReportAssertionError("Tors B' does not dominate Tors Am", bundle())

    cyclic_section: Any = None
    if cls.is_cyclic:
        rec = verify_cyclic(q, am_result=(am_rank, am_torsion))
        cyclic_section = {"data": rec.data.to_dict(), "verification": rec.to_dict()}

    pi1_trivial = p1.order == 1
    generated = (
        cls.is_special and gcd(order, 6) == 1 and pi1_trivial and am_torsion.is_trivial
    )
    data = {
        "bounds": {
            "best": best.to_dict(),
            "exponent_bound": exp_bound,
            "length_bound": 6 + delta,
        },
        "bprime_equals_b_torsion": bp_torsion == am_torsion,
        "classification": cls.to_dict(),
        "conjecture_monitor": {
            "applies": pi1_trivial,
            "exp_divides_height": q.height % am_torsion.exponent == 0,
            "length_at_most_3_plus_delta": am_torsion.length <= 3 + delta,
        },
        "cyclic": cyclic_section,
        "generated_over_Z_flag": generated,
        "group": {
            "exponent": q.exponent,
            "factors": list(q.factors),
            "height": q.height,
            "order": order,
        },
        "input": {"kernel": q.kernel_matrix, "kind": q.kind},
        "pi1": p1.to_dict(),
        "rank_K": {"formula": rank_formula, "snf": rank_snf},
        "subgroup_orders": so.to_dict(),
        "torsion_Bprime": _factors(bp_torsion),
        "torsion_T": _factors(am_torsion),
    }
    if all_permutation_bounds:
        data["bounds"]["all"] = [b.to_dict() for b in bounds]
    return InvariantReport(q, data)
