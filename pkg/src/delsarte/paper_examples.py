"""Published example quotients and their expected invariants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm

from .linalg import IntMatrix
from .modules import filtration_layer, present_Am, present_Bprime, torsion_bound
from .quotient import FiniteQuotient, classify
from .report import analyze


@dataclass(frozen=True)
class GoldenQuotient:
    name: str
    diag: tuple
    unimodular: tuple
    pi1_order: int
    torsion: tuple

    @property
    def kernel(self) -> list[list[int]]:
        return (IntMatrix.diagonal(list(self.diag)) @ IntMatrix([list(r) for r in self.unimodular])).rows

    def quotient(self) -> FiniteQuotient:
        return FiniteQuotient.from_kernel_matrix(self.kernel)


MAX_LENGTH = (
    GoldenQuotient("max-length alpha1", (1, 8, 8), ((4, 7, 1), (1, 0, 0), (0, 1, 0)), 2, (2, 2, 2, 2, 2, 2, 4)),
    GoldenQuotient("max-length alpha2", (1, 8, 8), ((0, 3, 1), (1, 0, 0), (0, 1, 0)), 1, (2, 2, 2, 4)),
    GoldenQuotient("max-length alpha3", (1, 8, 16), ((4, 1, -1), (1, 1, 0), (1, 0, 0)), 2, (2, 2, 2, 4, 4, 4, 4)),
    GoldenQuotient("max-length alpha4", (1, 8, 16), ((6, 1, 2), (1, 0, 1), (0, 0, 1)), 4, (2, 4, 4, 4, 4, 8)),
    GoldenQuotient("max-length alpha5", (1, 8, 16), ((1, 0, 3), (0, 1, 1), (0, 0, 1)), 1, (4, 4, 4, 4)),
    GoldenQuotient("max-length alpha6", (1, 9, 9), ((-3, 1, 2), (1, 0, 0), (0, 0, 1)), 3, (3, 3, 3, 3, 3, 9)),
    GoldenQuotient("max-length alpha7", (1, 9, 9), ((-1, 1, 1), (0, 1, 1), (0, 0, 1)), 1, (3, 3, 9)),
    GoldenQuotient("max-length alpha8", (2, 9, 9), ((-4, 2, 1), (-3, 1, 0), (1, 0, 1)), 3, (3, 3, 3, 3, 3, 3, 9)),
    GoldenQuotient("max-length alpha9", (2, 9, 9), ((3, 2, 0), (1, 1, 0), (3, 0, -1)), 1, (3, 3, 3, 9)),
)

PRIME_TO_SIX = (
    GoldenQuotient("prime-to-6 alpha1", (1, 5, 25), ((2, -1, 6), (1, 0, 1), (0, 0, 1)), 5, (5,) * 6),
    GoldenQuotient("prime-to-6 alpha2", (1, 5, 25), ((2, 0, -1), (4, 1, -1), (1, 0, 0)), 1, (5, 5, 5)),
    GoldenQuotient("prime-to-6 alpha3", (1, 7, 7), ((1, 2, 5), (0, 0, 1), (1, 1, 0)), 7, (7,) * 6),
    GoldenQuotient("prime-to-6 alpha4", (1, 7, 7), ((1, 0, 2), (1, 0, 1), (3, 1, 0)), 1, (7, 7, 7)),
)

GOLDEN = MAX_LENGTH + PRIME_TO_SIX

DIAGONAL = ((2, 4, 4), (2, 6, 6), (2, 8, 8), (4, 6, 12))

CYCLIC_KERNEL = ((1, 1, 0), (3, 0, 3), (0, 0, 4))


def diagonal_s_bar(m1: int, m2: int, m3: int) -> int:
    """lcm of the pairwise gcds over gcd(m1, m2, m3)."""
    return reduce(lcm, (gcd(m1, m2), gcd(m1, m3), gcd(m2, m3))) // gcd(m1, m2, m3)


@dataclass
class Check:
    example: str
    quantity: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def to_dict(self) -> dict:
        return {
            "example": self.example,
            "expected": self.expected,
            "got": self.got,
            "ok": self.ok,
            "quantity": self.quantity,
        }


def golden_checks(g: GoldenQuotient) -> list[Check]:
    r = analyze(g.quotient()).data
    return [
        Check(g.name, "pi1_order", g.pi1_order, r["pi1"]["order"]),
        Check(g.name, "torsion_T", list(g.torsion), r["torsion_T"]),
    ]


def diagonal_checks(ms: tuple) -> list[Check]:
    name = f"diagonal {ms}"
    q = FiniteQuotient.diagonal(*ms)
    r = analyze(q).data
    s = diagonal_s_bar(*ms)
    t_order = 1
    for a in r["torsion_T"]:
        t_order *= a
    return [
        Check(name, "torsion_Bprime", [s] if s > 1 else [], r["torsion_Bprime"]),
        Check(name, "s_bar", s, torsion_bound(q).s_bar),
        Check(name, "|T| divides s_bar", True, s % t_order == 0),
        Check(name, "torsion_T", [s] if s > 1 else [], r["torsion_T"]),
    ]


def cyclic_checks() -> list[Check]:
    name = "cyclic m=12"
    q = FiniteQuotient.from_kernel_matrix([list(r) for r in CYCLIC_KERNEL])
    r = analyze(q).data
    am, bp = present_Am(q), present_Bprime(q)
    ident = torsion_bound(q)
    swapped = torsion_bound(q, (0, 2, 1, 3))
    return [
        Check(name, "m", 12, q.exponent),
        Check(name, "is_cyclic", True, classify(q).is_cyclic),
        Check(name, "torsion_T", [], r["torsion_T"]),
        Check(name, "Tors(B3/B2)", [2, 4], list(filtration_layer(am, 3, 2).torsion_factors)),
        Check(name, "Tors(B'3/B'2)", [2, 4, 4], list(filtration_layer(bp, 3, 2).torsion_factors)),
        Check(name, "identity (p2, p3, q, s)", (2, 2, 1, 1), ident.p_bar + (ident.q_bar, ident.s_bar)),
        Check(name, "(0,2,1,3) (p2, p3, q, s)", (1, 1, 1, 1), swapped.p_bar + (swapped.q_bar, swapped.s_bar)),
        Check(name, "best permutation", [0, 2, 1, 3], r["bounds"]["best"]["permutation"]),
        Check(name, "B differs from B'", True, filtration_layer(am, 3, 2) != filtration_layer(bp, 3, 2)),
    ]


def run_paper_examples() -> list[Check]:
    checks: list[Check] = []
    for g in GOLDEN:
        checks.extend(golden_checks(g))
    for ms in DIAGONAL:
        checks.extend(diagonal_checks(ms))
    checks.extend(cyclic_checks())
    return checks
