"""Finite quotients of the group GG = <t0, t1, t2, t3 | t0 t1 t2 t3 = 1>.

GG is written additively as Z^3 in the basis t1, t2, t3, so that
t0 = (-1, -1, -1).  A finite quotient G = GG / Ker is stored through a 3x3
kernel matrix whose rows generate Ker; the Smith form of that matrix gives
coordinates on G = Z/d1 + Z/d2 + Z/d3.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm, prod
from typing import Sequence

from .linalg import (
    AbelianGroupStructure,
    IntMatrix,
    cokernel,
    row_basis,
    smith_normal_form,
)

#: additive coordinates of t0, t1, t2, t3
T = ((-1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1))
PAIRS = tuple(itertools.combinations(range(4), 2))
PERMUTATIONS = tuple(itertools.permutations(range(4)))
IDENTITY = (0, 1, 2, 3)

#: a group element: SNF coordinates (x1 mod d1, x2 mod d2, x3 mod d3)
GroupElement = tuple


class QuotientError(ValueError):
    """Invalid quotient data (singular kernel, bad constructor parameters)."""

    def __init__(self, message: str, condition: str | None = None, position: int | None = None):
        self.condition = condition
        self.position = position
        super().__init__(message)


def add_vec(*vs):
    return tuple(sum(x) for x in zip(*vs))


def word_vector(word: Sequence[int]) -> tuple[int, int, int]:
    """Additive coordinates of t0^w0 t1^w1 t2^w2 t3^w3."""
    w0, w1, w2, w3 = word
    return (w1 - w0, w2 - w0, w3 - w0)


def permutation_matrix(perm: Sequence[int]) -> list[list[int]]:
    """Rows: coordinates of t_perm[1], t_perm[2], t_perm[3] (the relabelling automorphism)."""
    return [list(T[perm[i]]) for i in (1, 2, 3)]


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * 4
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class SubgroupOrders:
    """Orders of G_ij, G_i, G_= (quotients of G by images of subgroups of GG)."""

    g_ij: dict
    g_i: dict
    g_eq: int

    @property
    def delta(self) -> int:
        return self.g_eq - 1

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "g_eq": self.g_eq,
            "g_i": {str(i): v for i, v in sorted(self.g_i.items())},
            "g_ij": {f"{i}{j}": v for (i, j), v in sorted(self.g_ij.items())},
        }


@dataclass(frozen=True)
class Classification:
    is_fermat: bool
    fermat_m: int | None
    is_unramified: bool
    unramified_index: int | None
    is_cyclic: bool
    is_diagonal: bool
    diagonal_permutation: tuple | None
    diagonal_m: tuple | None
    height: int

    @property
    def is_special(self) -> bool:
        return self.is_fermat or self.is_unramified or self.is_cyclic or self.is_diagonal

    def to_dict(self) -> dict:
        return {
            "diagonal_m": list(self.diagonal_m) if self.diagonal_m else None,
            "diagonal_permutation": list(self.diagonal_permutation)
            if self.diagonal_permutation else None,
            "fermat_m": self.fermat_m,
            "height": self.height,
            "is_cyclic": self.is_cyclic,
            "is_diagonal": self.is_diagonal,
            "is_fermat": self.is_fermat,
            "is_special": self.is_special,
            "is_unramified": self.is_unramified,
            "unramified_index": self.unramified_index,
        }


@dataclass(frozen=True, eq=False)
class FiniteQuotient:
    """An epimorphism GG -> G onto a finite abelian group.

    ``kernel`` is the Hermite form of the kernel matrix, so equal lattices
    compare and serialise identically.  ``basis_change`` maps Z^3 onto the
    Smith coordinates of G: ``encode(x) = (x @ basis_change) mod factors``.
    """

    kernel: tuple
    factors: tuple
    basis_change: tuple
    kind: str = field(default="matrix", compare=False)

    def __eq__(self, other):
        if not isinstance(other, FiniteQuotient):
            return NotImplemented
        return self.kernel == other.kernel

    def __hash__(self):
        return hash(self.kernel)

    def __repr__(self):
        return f"FiniteQuotient(kernel={[list(r) for r in self.kernel]}, factors={self.factors})"

    # -- basic invariants -------------------------------------------------

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1]

    @property
    def structure(self) -> AbelianGroupStructure:
        return AbelianGroupStructure(0, tuple(d for d in self.factors if d > 1))

    @property
    def kernel_matrix(self) -> list[list[int]]:
        return [list(r) for r in self.kernel]

    @cached_property
    def height(self) -> int:
        n = 0
        for r in self.kernel:
            for x in r:
                n = gcd(n, x)
        return self.exponent // n

    # -- group arithmetic -------------------------------------------------

    def encode(self, vec: Sequence[int]) -> GroupElement:
        V = self.basis_change
        return tuple(
            sum(vec[i] * V[i][j] for i in range(3)) % self.factors[j] for j in range(3)
        )

    def image(self, word: Sequence[int]) -> GroupElement:
        """alpha of the word t0^w0 t1^w1 t2^w2 t3^w3."""
        return self.encode(word_vector(word))

    @cached_property
    def generator_images(self) -> tuple:
        """alpha(t0), ..., alpha(t3)."""
        return tuple(self.encode(v) for v in T)

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        d = self.factors
        return ((a[0] + b[0]) % d[0], (a[1] + b[1]) % d[1], (a[2] + b[2]) % d[2])

    def neg(self, a: GroupElement) -> GroupElement:
        d = self.factors
        return ((-a[0]) % d[0], (-a[1]) % d[1], (-a[2]) % d[2])

    def element_order(self, a: GroupElement) -> int:
        return lcm(*(d // gcd(d, x) for d, x in zip(self.factors, a)))

    @cached_property
    def elements(self) -> tuple:
        """G enumerated lexicographically in Smith coordinates."""
        return tuple(itertools.product(*(range(d) for d in self.factors)))

    def index(self, a: GroupElement) -> int:
        d = self.factors
        return (a[0] * d[1] + a[1]) * d[2] + a[2]

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_kernel_matrix(cls, gamma, kind: str = "matrix") -> "FiniteQuotient":
        rows = gamma.rows if isinstance(gamma, IntMatrix) else [list(r) for r in gamma]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise QuotientError("kernel matrix must be 3x3", condition="shape")
        if IntMatrix(rows).det() == 0:
            raise QuotientError("kernel not finite index", condition="singular")
        snf = smith_normal_form(rows)
        factors = tuple(snf.diagonal)
        H = row_basis(rows, 3)
        q = cls(
            kernel=tuple(tuple(r) for r in H),
            factors=factors,
            basis_change=tuple(tuple(r) for r in snf.V.rows),
            kind=kind,
        )
        q._check()
        return q

    def _check(self):
        m = self.exponent
        if abs(IntMatrix(self.kernel_matrix).det()) != self.order:
            raise AssertionError("|G| differs from |det kernel|")
        for i in range(3):
            e = [0, 0, 0]
            e[i] = m
            if any(self.encode(e)):
                raise AssertionError("exp G does not annihilate G")
        if any(self.encode(r) != (0, 0, 0) for r in self.kernel):
            raise AssertionError("kernel rows do not map to zero")
        h = self.height
        if m ** 3 % self.order or (h * h) % (m ** 3 // self.order):
            raise AssertionError("(exp G)^3/|G| must be an integer dividing height^2")

    @classmethod
    def fermat(cls, m: int) -> "FiniteQuotient":
        if m < 1:
            raise QuotientError("Fermat degree must be positive", condition="positive")
        return cls.from_kernel_matrix([[m, 0, 0], [0, m, 0], [0, 0, m]], kind="fermat")

    @classmethod
    def diagonal(cls, m1: int, m2: int, m3: int) -> "FiniteQuotient":
        if min(m1, m2, m3) < 1:
            raise QuotientError("diagonal entries must be positive", condition="positive")
        return cls.from_kernel_matrix([[m1, 0, 0], [0, m2, 0], [0, 0, m3]], kind="diagonal")

    @classmethod
    def cyclic(cls, m: int, weights: Sequence[int]) -> "FiniteQuotient":
        """alpha(t_i) = t^{w_i} in Z/m; the kernel is {r : r1 w1 + r2 w2 + r3 w3 = 0 mod m}."""
        if m < 1:
            raise QuotientError("cyclic order must be positive", condition="positive")
        if len(weights) != 4:
            raise QuotientError("cyclic quotient needs four weights", condition="shape")
        w0, w1, w2, w3 = (int(w) for w in weights)
        if (w0 + w1 + w2 + w3) % m:
            raise QuotientError(
                "weights must sum to 0 mod m", condition="sum"
            )
        if gcd(m, w1, w2, w3) != 1:
            raise QuotientError("gcd(m, m1, m2, m3) must be 1", condition="gcd")
        gens = [[m, 0, 0], [0, m, 0], [0, 0, m]]
        # solutions of r1 w1 + r2 w2 + r3 w3 = 0 (mod m): left kernel of the weight column
        from .linalg import hermite_normal_form

        H, U = hermite_normal_form([[w1], [w2], [w3], [m]])
        gens += [u[:3] for u in U.rows[1:]]
        q = cls.from_kernel_matrix(row_basis(gens, 3), kind="cyclic")
        if q.factors[:2] != (1, 1) or q.exponent != m:
            raise AssertionError("cyclic constructor did not produce Z/m")
        return q

    @classmethod
    def from_exponent_matrix(cls, A, convention: str = "column") -> "FiniteQuotient":
        """Quotient defined by a Delsarte exponent matrix.

        ``convention='column'`` lets A act by t_j -> prod_i t_i^{a_ij}; this is
        the action that preserves t0 t1 t2 t3 under constant row sums.
        ``'row'`` (t_i -> prod_j t_j^{a_ij}) is only accepted when the column
        sums are constant as well.
        """
        rows = A.rows if isinstance(A, IntMatrix) else [list(r) for r in A]
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise QuotientError("exponent matrix must be 4x4", condition="shape")
        if any(x < 0 for r in rows for x in r):
            raise QuotientError("condition (1): entries must be non-negative", condition="1")
        if any(all(rows[i][j] for i in range(4)) for j in range(4)):
            raise QuotientError("condition (2): each column needs a zero", condition="2")
        if len({sum(r) for r in rows}) != 1:
            raise QuotientError("condition (3): row sums must be constant", condition="3")
        M = IntMatrix(rows)
        det = M.det()
        if det == 0:
            raise QuotientError("condition (4): det A must be nonzero", condition="4")
        if convention == "column":
            images = [[rows[i][j] for i in range(4)] for j in range(4)]
        elif convention == "row":
            if len({sum(rows[i][j] for i in range(4)) for j in range(4)}) != 1:
                raise QuotientError(
                    "row action is not defined: column sums are not constant",
                    condition="convention",
                )
            images = [list(r) for r in rows]
        else:
            raise ValueError(f"unknown convention {convention!r}")
        d = 0
        for i in range(4):
            for j in range(4):
                d = gcd(d, _cofactor(rows, i, j))
        m = abs(det) // d
        gens = [word_vector(w) for w in images]
        gens += [[m, 0, 0], [0, m, 0], [0, 0, m]]
        q = cls.from_kernel_matrix(row_basis(gens, 3), kind="exponent")
        return q

    # -- derived subgroups ---------------------------------------------------

    def quotient_order(self, gens: Sequence[Sequence[int]]) -> int:
        """|Z^3 / (Ker + span(gens))|."""
        return cokernel([list(r) for r in self.kernel] + [list(g) for g in gens], 3).order

    def element_order_modulo(self, vec: Sequence[int], modulo: Sequence[Sequence[int]] = ()) -> int:
        """Order of the image of ``vec`` in G / <images of ``modulo``>."""
        base = self.quotient_order(modulo)
        return base // self.quotient_order(list(modulo) + [vec])

    def permuted(self, perm: Sequence[int]) -> "FiniteQuotient":
        """The quotient alpha' with alpha'(t_i) = alpha(t_perm[i])."""
        P = permutation_matrix(inverse_permutation(perm))
        rows = [[sum(r[k] * P[k][j] for k in range(3)) for j in range(3)] for r in self.kernel]
        return FiniteQuotient.from_kernel_matrix(rows, kind=self.kind)


def _cofactor(rows, i, j) -> int:
    minor = [[rows[a][b] for b in range(4) if b != j] for a in range(4) if a != i]
    return (-1) ** (i + j) * IntMatrix(minor).det()


def subgroup_orders(q: FiniteQuotient) -> SubgroupOrders:
    g_ij = {(i, j): q.quotient_order([T[i], T[j]]) for i, j in PAIRS}
    g_i = {}
    for i in (1, 2, 3):
        j, k = [x for x in (1, 2, 3) if x != i]
        g_i[i] = q.quotient_order([add_vec(T[i], T[j]), add_vec(T[i], T[k])])
    g_eq = q.quotient_order([add_vec(T[1], T[2]), add_vec(T[1], T[3]), add_vec(T[2], T[3])])
    if g_eq not in (1, 2):
        raise AssertionError(f"|G_=| = {g_eq} outside {{1, 2}}")
    return SubgroupOrders(g_ij, g_i, g_eq)


def classify(q: FiniteQuotient) -> Classification:
    d1, d2, d3 = q.factors
    is_fermat = d1 == d2 == d3
    imgs = q.generator_images
    unram = next((i for i in range(4) if imgs[i] == (0, 0, 0)), None)
    diag_perm = diag_m = None
    for perm in PERMUTATIONS:
        ms = tuple(q.element_order(imgs[perm[i]]) for i in (1, 2, 3))
        if prod(ms) != q.order:
            continue
        target = row_basis([[ms[0], 0, 0], [0, ms[1], 0], [0, 0, ms[2]]], 3)
        if [list(r) for r in q.permuted(perm).kernel] == target:
            diag_perm, diag_m = perm, ms
            break
    return Classification(
        is_fermat=is_fermat,
        fermat_m=d3 if is_fermat else None,
        is_unramified=unram is not None,
        unramified_index=unram,
        is_cyclic=d1 == d2 == 1,
        is_diagonal=diag_perm is not None,
        diagonal_permutation=diag_perm,
        diagonal_m=diag_m,
        height=q.height,
    )


def element_order_in_quotient(q: FiniteQuotient, word, modulo_words=()) -> int:
    return q.element_order_modulo(word_vector(word), [word_vector(w) for w in modulo_words])


# ---------------------------------------------------------------------------
# text form of kernel matrices

_TOKEN = re.compile(r"\s*(?:(-?\d+)|(diag)|(.))")


def parse_kernel_matrix(text: str, size: int = 3) -> list[list[int]]:
    """Parse ``[[a,b,c],[d,e,f],[g,h,i]]``, optionally prefixed by ``diag(x,y,z)*``.

    ``size`` sets the expected square shape (4 for exponent matrices).
    """
    src = text.replace("−", "-")
    toks = []
    for m in _TOKEN.finditer(src):
        if m.group(0).strip() == "":
            continue
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("diag", None, m.start(2)))
        else:
            toks.append(("sym", m.group(3), m.start(3)))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("end", None, len(src))

    def expect(sym):
        nonlocal pos
        kind, val, at = peek()
        if kind != "sym" or val != sym:
            raise QuotientError(
                f"expected {sym!r} at position {at}, found {val if val is not None else kind!r}",
                condition="syntax",
                position=at,
            )
        pos += 1

    def integer():
        nonlocal pos
        kind, val, at = peek()
        if kind != "int":
            raise QuotientError(
                f"expected an integer at position {at}", condition="syntax", position=at
            )
        pos += 1
        return val

    def int_list(open_, close):
        expect(open_)
        out = [integer()]
        while peek()[:2] == ("sym", ","):
            expect(",")
            out.append(integer())
        expect(close)
        return out

    scale = None
    if peek()[0] == "diag":
        pos += 1
        scale = int_list("(", ")")
        if len(scale) != size:
            raise QuotientError(f"diag() needs {size} entries", condition="shape", position=0)
        expect("*")
    expect("[")
    rows = [int_list("[", "]")]
    while peek()[:2] == ("sym", ","):
        expect(",")
        rows.append(int_list("[", "]"))
    expect("]")
    kind, val, at = peek()
    if kind != "end":
        raise QuotientError(f"trailing input at position {at}", condition="syntax", position=at)
    if len(rows) != size or any(len(r) != size for r in rows):
        raise QuotientError(f"matrix must be {size}x{size}", condition="shape", position=0)
    if scale is not None:
        rows = [[scale[i] * x for x in rows[i]] for i in range(size)]
    return rows
