"""Univariate polynomials over Q or F_p and Smith form over k[t].

Coefficients are stored low degree first.  Characteristic 0 uses
``fractions.Fraction``; characteristic p uses ints reduced mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


class Poly:
    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Sequence = (), p: int = 0):
        self.p = p
        if p:
            cs = [int(c) % p for c in coeffs]
        else:
            cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, p: int = 0, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff], p)

    @classmethod
    def t_power_minus_one(cls, n: int, p: int = 0) -> "Poly":
        """t^n - 1 (the zero polynomial for n = 0)."""
        if n == 0:
            return cls((), p)
        return cls([-1] + [0] * (n - 1) + [1], p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def _like(self, coeffs):
        return Poly(coeffs, self.p)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return self._like([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._like(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._like(out)

    def __pow__(self, k: int) -> "Poly":
        out = self._like([1])
        for _ in range(k):
            out = out * self
        return out

    def _inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        inv = self._inv(other.lead)
        q = [0] * max(len(r) - d, 0)
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k] * inv
            if self.p:
                c %= self.p
            if c:
                q[k - d] = c
                for j, y in enumerate(other.coeffs):
                    r[k - d + j] -= c * y
        return self._like(q), self._like(r[:d] if d > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if not self:
            return not other
        return not (other % self)

    def monic(self) -> "Poly":
        if not self:
            return self
        inv = self._inv(self.lead)
        return self._like([c * inv for c in self.coeffs])

    def reduce(self, p: int) -> "Poly":
        """Reduction mod p of a polynomial with integral coefficients."""
        if any(Fraction(c).denominator != 1 for c in self.coeffs):
            raise ValueError("cannot reduce a non-integral polynomial mod p")
        return Poly([int(c) for c in self.coeffs], p)

    def int_coeffs(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({self.int_coeffs() if self.p or all(Fraction(c).denominator == 1 for c in self.coeffs) else list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if not self:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"{c}{'*' + mono if mono else ''}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(d: int) -> tuple:
    f = Poly.t_power_minus_one(d)
    for e in range(1, d):
        if d % e == 0:
            f = f // Poly(_cyclotomic_coeffs(e))
    return tuple(int(c) for c in f.coeffs)


def cyclotomic(d: int, p: int = 0) -> Poly:
    """Phi_d, by dividing t^d - 1 by Phi_e over the proper divisors e of d."""
    if d < 1:
        raise ValueError("cyclotomic order must be positive")
    return Poly(_cyclotomic_coeffs(d), p)


@dataclass
class FieldPolyMatrix:
    rows: list
    characteristic: int = 0

    def __post_init__(self):
        for r in self.rows:
            for x in r:
                if x.p != self.characteristic:
                    raise ValueError("entries must share the matrix characteristic")

    @classmethod
    def from_integer_polys(cls, rows: Sequence[Sequence[Poly]], p: int = 0) -> "FieldPolyMatrix":
        return cls([[x.reduce(p) if p else Poly(x.coeffs) for x in r] for r in rows], p)


def poly_smith_normal_form(M: FieldPolyMatrix) -> list[Poly]:
    """Monic invariant factors f_1 | f_2 | ... (zeros for the rank defect at the end).

    The list has min(rows, cols) entries.
    """
    p = M.characteristic
    A = [list(r) for r in M.rows]
    if not A:
        return []
    m, n = len(A), len(A[0])
    out = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or A[i][j].degree < best[0]):
                    best = (A[i][j].degree, i, j)
        if best is None:
            out.extend([Poly((), p)] * (min(m, n) - t))
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = divmod(A[i][t], piv)
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if r:
                        A[t], A[i] = A[i], A[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = divmod(A[t][j], piv)
                    for row in A:
                        row[j] = row[j] - q * row[t]
                    if r:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        moved = True
                        break
            if moved:
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        out.append(A[t][t].monic())
    return out
