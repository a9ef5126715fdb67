"""Closed-form invariant factors of Am for cyclic quotients G = Z/m.

With alpha(t_i) = t^(m_i), the module Am tensored with a field k is a
k[t]-module with invariant factors f_1 | ... | f_6, all products of
cyclotomic polynomials.  This module computes them from the weights, builds
the 9x6 polynomial relation matrix, and cross-checks both against the
integer path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import sympy

from .linalg import AbelianGroupStructure
from .modules import module_rank_torsion, present_Am
from .polynomials import FieldPolyMatrix, Poly, cyclotomic, poly_smith_normal_form
from .quotient import PAIRS, FiniteQuotient, QuotientError, subgroup_orders

TRIPLES = ((1, 2, 3), (2, 1, 3), (3, 1, 2))


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def canonical_weights(m: int, weights) -> tuple:
    """Lexicographically smallest unit multiple of the weight quadruple."""
    ws = tuple(w % m for w in weights)
    return min(tuple(u * w % m for w in ws) for u in range(1, m + 1) if gcd(u, m) == 1)


@dataclass(frozen=True)
class CyclicData:
    m: int
    weights: tuple

    def __post_init__(self):
        m, w = self.m, self.weights
        if m < 1 or len(w) != 4:
            raise QuotientError("cyclic data needs m >= 1 and four weights", condition="shape")
        if sum(w) % m:
            raise QuotientError("weights must sum to 0 mod m", condition="sum")
        if gcd(m, w[1], w[2], w[3]) != 1:
            raise QuotientError("gcd(m, m1, m2, m3) must be 1", condition="gcd")

    @classmethod
    def from_weights(cls, m: int, weights) -> "CyclicData":
        if len(weights) == 3:
            weights = (-sum(weights),) + tuple(weights)
        return cls(m, canonical_weights(m, weights))

    def m_pair(self, i: int, j: int) -> int:
        """m_ij = gcd(m, m_i + m_j)."""
        return gcd(self.m, self.weights[i] + self.weights[j])

    @property
    def pair_gcds(self) -> dict:
        return {(i, j): self.m_pair(i, j) for i, j in PAIRS}

    @property
    def delta(self) -> int:
        w = self.weights
        return int(self.m % 2 == 0 and w[1] % 2 == 1 and w[2] % 2 == 1 and w[3] % 2 == 1)

    # subgroup orders in closed form
    @property
    def d_pairs(self) -> dict:
        return {(i, j): gcd(self.m, self.weights[i], self.weights[j]) for i, j in PAIRS}

    @property
    def d_single(self) -> dict:
        return {i: gcd(self.m_pair(i, j), self.m_pair(i, k)) for i, j, k in TRIPLES}

    def check(self):
        mp = self.pair_gcds
        for (i, j), v in mp.items():
            k, l = [x for x in range(4) if x not in (i, j)]
            if v != mp[(k, l)]:
                raise AssertionError(f"m_{i}{j} != m_{k}{l}")
        if gcd(mp[(1, 2)], mp[(1, 3)], mp[(2, 3)]) != 2 ** self.delta:
            raise AssertionError("gcd(m12, m13, m23) != 2^delta")

    def qualifying_divisors(self) -> list[int]:
        """Divisors d | m entering f_5, with the exclusivity check for d > 2."""
        w = self.weights
        out = []
        for d in _divisors(self.m):
            c1 = [(i, j) for i, j in PAIRS if w[i] % d == 0 and w[j] % d == 0]
            c2 = [i for i, j, k in TRIPLES if self.m_pair(i, j) % d == 0 and self.m_pair(i, k) % d == 0]
            if d > 2 and len(c1) + len(c2) > 1:
                raise AssertionError(f"divisor {d} satisfies several conditions: {c1}, {c2}")
            if c1 or c2:
                out.append(d)
        return out

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "m": self.m,
            "pair_gcds": {f"{i}{j}": v for (i, j), v in self.pair_gcds.items()},
            "weights": list(self.weights),
        }


@dataclass(frozen=True)
class CyclotomicProduct:
    """prod Phi_d^mult, stored as {d: mult}."""

    factors: tuple  # sorted (d, mult) pairs

    @classmethod
    def of(cls, mults: dict) -> "CyclotomicProduct":
        return cls(tuple(sorted((d, k) for d, k in mults.items() if k)))

    @property
    def degree(self) -> int:
        return sum(k * sympy.totient(d) for d, k in self.factors)

    def expand(self, p: int = 0) -> Poly:
        out = Poly([1], p)
        for d, k in self.factors:
            out = out * cyclotomic(d, p) ** k
        return out

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"Phi{d}" + (f"^{k}" if k > 1 else "") for d, k in self.factors)


def cyclic_weights(q: FiniteQuotient) -> CyclicData:
    f = q.factors
    if f[0] != 1 or f[1] != 1:
        raise QuotientError(f"quotient is not cyclic (factors {f})", condition="cyclic")
    m = f[2]
    weights = tuple(img[2] for img in q.generator_images)
    c = CyclicData.from_weights(m, weights)
    c.check()
    return c


def closed_form_factors(c: CyclicData) -> list[CyclotomicProduct]:
    """f_1..f_6 over Q; over F_p they are the reductions of the same products."""
    phi1 = CyclotomicProduct.of({1: 1})
    f4 = CyclotomicProduct.of({1: 1, 2: c.delta})
    f5 = CyclotomicProduct.of({d: 1 for d in c.qualifying_divisors()})
    f6 = CyclotomicProduct.of({d: 1 for d in _divisors(c.m)})
    return [phi1, phi1, phi1, f4, f5, f6]


def relation_matrix_M(c: CyclicData) -> list[list[Poly]]:
    """The 9x6 relation matrix of Am over Z[t] (columns a1, a2, a3, c1, c2, c3)."""
    P = Poly.t_power_minus_one
    w = c.weights
    ph = P(c.m)
    p1, p2, p3 = P(w[1]), P(w[2]), P(w[3])
    p23, p13, p12 = P(c.m_pair(2, 3)), P(c.m_pair(1, 3)), P(c.m_pair(1, 2))
    z = Poly()
    return [
        [z, p3, -p2, p3, z, z],
        [p3, z, -p1, z, p3, z],
        [-p2, p1, z, z, z, p1],
        [ph, z, z, z, z, z],
        [z, ph, z, z, z, z],
        [z, z, ph, z, z, z],
        [z, z, z, p23, z, z],
        [z, z, z, z, p13, z],
        [z, z, z, z, z, p12],
    ]


def rank_from_divisors(c: CyclicData) -> int:
    return c.m + 4 + c.delta + sum(int(sympy.totient(d)) for d in c.qualifying_divisors())


def rank_from_subgroups(c: CyclicData) -> int:
    return c.m - 4 - c.delta + sum(c.d_pairs.values()) + sum(c.d_single.values())


@dataclass
class CyclicVerification:
    data: CyclicData
    characteristics: list
    closed_form: dict = field(default_factory=dict)  # char -> list[str]
    poly_snf: dict = field(default_factory=dict)
    degree_sums: dict = field(default_factory=dict)
    integer_rank: int = 0
    integer_torsion: AbelianGroupStructure = field(default_factory=AbelianGroupStructure)
    snf_matches_closed_form: bool = False
    degree_sums_equal: bool = False
    torsion_free: bool = False
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.snf_matches_closed_form and self.degree_sums_equal and self.torsion_free

    def to_dict(self) -> dict:
        return {
            "characteristics": self.characteristics,
            "closed_form": {str(k): v for k, v in self.closed_form.items()},
            "degree_sums": {str(k): v for k, v in self.degree_sums.items()},
            "degree_sums_equal": self.degree_sums_equal,
            "integer_rank": self.integer_rank,
            "integer_torsion": list(self.integer_torsion.torsion_factors),
            "mismatches": self.mismatches,
            "ok": self.ok,
            "snf_matches_closed_form": self.snf_matches_closed_form,
            "torsion_free": self.torsion_free,
        }


def _poly_str_list(polys) -> list[str]:
    return [str(f) for f in polys]


def verify_cyclic(q: FiniteQuotient, am_result=None) -> CyclicVerification:
    """Compare closed forms, polynomial SNF and the integer path.

    ``am_result`` may pass a precomputed ``(rank, torsion)`` of Am.
    Mismatches are collected rather than raised.
    """
    c = cyclic_weights(q)
    chars = [0] + [int(p) for p in sympy.primefactors(c.m)]
    rec = CyclicVerification(data=c, characteristics=chars)
    closed = closed_form_factors(c)
    M = relation_matrix_M(c)
    match = True
    sums = set()
    for p in chars:
        expected = [f.expand(p) for f in closed]
        got = poly_smith_normal_form(FieldPolyMatrix.from_integer_polys(M, p))
        rec.closed_form[p] = _poly_str_list(expected)
        rec.poly_snf[p] = _poly_str_list(got)
        if got != expected:
            match = False
            rec.mismatches.append({"characteristic": p, "expected": rec.closed_form[p], "got": rec.poly_snf[p]})
        rec.degree_sums[p] = sum(f.degree for f in got)
        sums.add(rec.degree_sums[p])
    rank, torsion = am_result if am_result is not None else module_rank_torsion(present_Am(q))
    rec.integer_rank = rank
    rec.integer_torsion = torsion
    so = subgroup_orders(q)
    formula_checks = {
        "closed_form_degree": sum(int(f.degree) for f in closed),
        "divisor_form": rank_from_divisors(c),
        "subgroup_form": rank_from_subgroups(c),
        "subgroup_orders": c.m - 4 - so.delta + sum(so.g_ij.values()) + sum(so.g_i.values()),
        "integer_rank": rank,
    }
    sums.update(formula_checks.values())
    rec.snf_matches_closed_form = match
    rec.degree_sums_equal = len(sums) == 1
    if not rec.degree_sums_equal:
        rec.mismatches.append({"degree_sums": rec.degree_sums, **formula_checks})
    rec.torsion_free = torsion.is_trivial
    if not rec.torsion_free:
        rec.mismatches.append({"integer_torsion": list(torsion.torsion_factors)})
    return rec
