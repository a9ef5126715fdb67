"""Exact integer linear algebra: Smith and Hermite forms, lattices, subquotients.

Everything here works over the integers with Python's arbitrary-precision
``int``.  Large sparse matrices (group-ring expansions) go through the
elimination kernels in :mod:`delsarte.kernels`; the transform-tracking
decompositions are plain Python and meant for small matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from . import kernels


class ContainmentError(ValueError):
    """A generator of the lower subgroup is not in the upper subgroup."""

    def __init__(self, index: int, vector):
        self.index = index
        self.vector = vector
        super().__init__(
            f"lower generator #{index} is not contained in the upper subgroup"
        )


# ---------------------------------------------------------------------------
# matrices


class IntMatrix:
    """Dense integer matrix stored as a list of row lists."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        self.rows = [[int(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def diagonal(cls, entries: Sequence[int], m: int | None = None, n: int | None = None):
        m = len(entries) if m is None else m
        n = len(entries) if n is None else n
        out = cls.zeros(m, n)
        for i, d in enumerate(entries):
            out.rows[i][i] = d
        return out

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, SparseIntMatrix):
            other = other.to_dense()
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"IntMatrix({self.rows!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal_entries(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        M = [r[:] for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if M[k][k] == 0:
                for i in range(k + 1, n):
                    if M[i][k]:
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]

    def to_sparse(self) -> "SparseIntMatrix":
        return SparseIntMatrix(
            [{j: x for j, x in enumerate(r) if x} for r in self.rows], self.ncols
        )


class SparseIntMatrix:
    """Integer matrix stored as one ``{column: value}`` dict per row."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[dict], ncols: int):
        self.rows = [{int(c): int(v) for c, v in r.items() if v} for r in rows]
        self.nrows = len(self.rows)
        self.ncols = ncols
        for r in self.rows:
            for c in r:
                if not 0 <= c < ncols:
                    raise ValueError(f"column {c} out of range for {ncols} columns")

    @property
    def shape(self):
        return self.nrows, self.ncols

    def to_dense(self) -> IntMatrix:
        out = []
        for r in self.rows:
            row = [0] * self.ncols
            for c, v in r.items():
                row[c] = v
            out.append(row)
        return IntMatrix(out, self.ncols)

    def __eq__(self, other):
        if isinstance(other, (IntMatrix, SparseIntMatrix)):
            return self.to_dense() == (other if isinstance(other, IntMatrix) else other.to_dense())
        return NotImplemented


def _dense_rows(A) -> tuple[list[list[int]], int]:
    if isinstance(A, IntMatrix):
        return [r[:] for r in A.rows], A.ncols
    if isinstance(A, SparseIntMatrix):
        return A.to_dense().rows, A.ncols
    rows = [[int(x) for x in r] for r in A]
    return rows, (len(rows[0]) if rows else 0)


def _sparse_rows(A, ncols=None) -> tuple[list[dict], int]:
    if isinstance(A, SparseIntMatrix):
        return [dict(r) for r in A.rows], A.ncols
    if isinstance(A, IntMatrix):
        return A.to_sparse().rows, A.ncols
    rows = list(A)
    if rows and isinstance(rows[0], dict):
        if ncols is None:
            raise ValueError("ncols is required for dict rows")
        return [dict(r) for r in rows], ncols
    dense, n = _dense_rows(rows)
    return [{j: x for j, x in enumerate(r) if x} for r in dense], (n if ncols is None else ncols)


# ---------------------------------------------------------------------------
# abelian groups


def invariant_factors(entries: Iterable[int]) -> list[int]:
    """Normalise the diagonal of a diagonal matrix to a divisibility chain.

    Zeros and units are dropped; the result lists the factors > 1 ascending.
    """
    L = sorted(abs(e) for e in entries if abs(e) > 1)
    for i in range(len(L)):
        for j in range(i + 1, len(L)):
            a, b = L[i], L[j]
            g = gcd(a, b)
            L[i], L[j] = g, a // g * b
    return [x for x in L if x > 1]


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^free_rank + Z/a_1 + ... + Z/a_k`` with ``a_1 | a_2 | ... | a_k``."""

    free_rank: int = 0
    torsion_factors: tuple[int, ...] = ()

    def __post_init__(self):
        tf = tuple(int(a) for a in self.torsion_factors)
        object.__setattr__(self, "torsion_factors", tf)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a in tf:
            if a < 2:
                raise ValueError(f"invalid torsion factor {a}")
        for a, b in zip(tf, tf[1:]):
            if b % a:
                raise ValueError(f"torsion factors {tf} do not form a divisibility chain")

    @classmethod
    def from_diagonal(cls, entries: Iterable[int], ambient_rank: int) -> "AbelianGroupStructure":
        """Cokernel of a diagonal map into ``Z^ambient_rank``."""
        entries = list(entries)
        rank = sum(1 for e in entries if e)
        return cls(ambient_rank - rank, tuple(invariant_factors(entries)))

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroupStructure":
        return cls(0, (n,) if n > 1 else ())

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    @property
    def torsion_order(self) -> int:
        out = 1
        for a in self.torsion_factors:
            out *= a
        return out

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        return self.torsion_order

    @property
    def exponent(self) -> int:
        return self.torsion_factors[-1] if self.torsion_factors else 1

    @property
    def length(self) -> int:
        """Minimal number of generators."""
        return self.free_rank + len(self.torsion_factors)

    @property
    def torsion(self) -> "AbelianGroupStructure":
        return AbelianGroupStructure(0, self.torsion_factors)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{a}" for a in self.torsion_factors]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion_factors": list(self.torsion_factors)}


def direct_sum(*groups: AbelianGroupStructure) -> AbelianGroupStructure:
    return AbelianGroupStructure(
        sum(g.free_rank for g in groups),
        tuple(invariant_factors(a for g in groups for a in g.torsion_factors)),
    )


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.D.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _min_abs_position(D, t, m, n):
    best = None
    bv = 0
    for i in range(t, m):
        row = D[i]
        for j in range(t, n):
            x = row[j]
            if x:
                ax = abs(x)
                if best is None or ax < bv:
                    best, bv = (i, j), ax
    return best


def smith_normal_form(A) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivot: smallest nonzero absolute value in the active block, ties broken
    by lowest row and then lowest column.  Works for any shape, including
    empty matrices.
    """
    D, n = _dense_rows(A)
    m = len(D)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def add_col(M, dst, src, q):
        # column dst -= q * column src
        for row in M:
            if row[src]:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        pos = _min_abs_position(D, t, m, n)
        if pos is None:
            break
        i, j = pos
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        swap_cols(D, t, j)
        swap_cols(V, t, j)
        while True:
            p = D[t][t]
            for k in range(t + 1, m):
                if D[k][t]:
                    q = D[k][t] // p
                    if q:
                        D[k] = [a - q * b for a, b in zip(D[k], D[t])]
                        U[k] = [a - q * b for a, b in zip(U[k], U[t])]
            for l in range(t + 1, n):
                if D[t][l]:
                    q = D[t][l] // p
                    if q:
                        add_col(D, l, t, q)
                        add_col(V, l, t, q)
            cand = None
            for k in range(t + 1, m):
                if D[k][t] and (cand is None or abs(D[k][t]) < cand[0]):
                    cand = (abs(D[k][t]), "row", k)
            for l in range(t + 1, n):
                if D[t][l] and (cand is None or abs(D[t][l]) < cand[0]):
                    cand = (abs(D[t][l]), "col", l)
            if cand is not None:
                if cand[1] == "row":
                    k = cand[2]
                    D[t], D[k] = D[k], D[t]
                    U[t], U[k] = U[k], U[t]
                else:
                    swap_cols(D, t, cand[2])
                    swap_cols(V, t, cand[2])
                continue
            bad = None
            for k in range(t + 1, m):
                if any(x % p for x in D[k][t + 1:]):
                    bad = k
                    break
            if bad is not None:
                D[t] = [a + b for a, b in zip(D[t], D[bad])]
                U[t] = [a + b for a, b in zip(U[t], U[bad])]
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SmithForm(IntMatrix(U, m), IntMatrix(D, n), IntMatrix(V, n))


def cokernel(A, ncols: int | None = None) -> AbelianGroupStructure:
    """Structure of ``Z^ncols / rowspan(A)``.

    Uses sparse unit-pivot elimination followed by dense diagonalisation;
    no transforms are kept, so this scales to the group-ring expansions.
    """
    rows, n = _sparse_rows(A, ncols)
    pivots, active, _ = kernels.eliminate_unit_pivots(rows, len(rows))
    cols = sorted(set().union(*active)) if active else []
    index = {c: k for k, c in enumerate(cols)}
    dense = []
    for r in active:
        row = [0] * len(cols)
        for c, v in r.items():
            row[index[c]] = v
        dense.append(row)
    diag = kernels.diagonalize(dense, len(cols))
    rank = len(pivots) + len(diag)
    return AbelianGroupStructure(n - rank, tuple(invariant_factors(diag)))


def rank(A) -> int:
    """Rank over Q, by fraction-free elimination (cross-check path)."""
    M, n = _dense_rows(A)
    M = [r for r in M if any(r)]
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            M[i] = [(M[i][j] * M[r][c] - M[r][j] * M[i][c]) // prev for j in range(n)]
        prev = M[r][c]
        r += 1
        if r == len(M):
            break
    return r


# ---------------------------------------------------------------------------
# Hermite normal form and lattices


def hermite_normal_form(A) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite form ``H = U @ A`` with ``U`` unimodular.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and
    zero rows are collected at the bottom.
    """
    H, n = _dense_rows(A)
    m = len(H)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            best = None
            for k in range(r, m):
                if H[k][c] and (best is None or abs(H[k][c]) < best[0]):
                    best = (abs(H[k][c]), k)
            if best is None:
                break
            k = best[1]
            H[r], H[k] = H[k], H[r]
            U[r], U[k] = U[k], U[r]
            p = H[r][c]
            again = False
            for kk in range(r + 1, m):
                if H[kk][c]:
                    q = H[kk][c] // p
                    H[kk] = [a - q * b for a, b in zip(H[kk], H[r])]
                    U[kk] = [a - q * b for a, b in zip(U[kk], U[r])]
                    again = again or bool(H[kk][c])
            if not again:
                break
        if H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            p = H[r][c]
            for kk in range(r):
                q = H[kk][c] // p
                if q:
                    H[kk] = [a - q * b for a, b in zip(H[kk], H[r])]
                    U[kk] = [a - q * b for a, b in zip(U[kk], U[r])]
            r += 1
    return IntMatrix(H, n), IntMatrix(U, m)


def row_basis(A, ncols: int | None = None) -> list[list[int]]:
    """Hermite basis (nonzero rows only) of the row span."""
    rows, n = _dense_rows(A)
    if ncols is not None:
        n = ncols
    return [list(r) for r in kernels.hermite_rows(rows, n)]


def _solve_echelon(H: Sequence[Sequence[int]], v: Sequence[int]):
    """Coefficients ``y`` with ``y @ H == v`` for an echelon basis ``H``, or None."""
    v = list(v)
    y = []
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        if any(v[:c]):
            return None
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        y.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return y if not any(v) else None


def solve_in_lattice(B, v):
    """Integer ``x`` with ``x @ B == v``, or ``None`` when ``v`` is not in the span.

    ``B`` must have linearly independent rows.
    """
    rows, n = _dense_rows(B)
    if len(v) != n:
        raise ValueError("vector length does not match the ambient rank")
    if not rows:
        return [] if not any(v) else None
    H, U = hermite_normal_form(rows)
    k = sum(1 for r in H.rows if any(r))
    if k != len(rows):
        raise ValueError("basis rows are linearly dependent")
    y = _solve_echelon(H.rows[:k], v)
    if y is None:
        return None
    return [sum(y[i] * U.rows[i][j] for i in range(k)) for j in range(len(rows))]


def lattice_intersection(B1, B2) -> list[list[int]]:
    """Hermite basis of ``span(B1) & span(B2)`` via the left kernel of ``[B1; -B2]``."""
    r1, n1 = _dense_rows(B1)
    r2, n2 = _dense_rows(B2)
    if r1 and r2 and n1 != n2:
        raise ValueError("lattices live in different ambient ranks")
    n = n1 if r1 else n2
    if not r1 or not r2:
        return []
    stacked = r1 + [[-x for x in r] for r in r2]
    H, U = hermite_normal_form(stacked)
    k = sum(1 for r in H.rows if any(r))
    gens = []
    for u in U.rows[k:]:
        x = u[: len(r1)]
        gens.append([sum(x[i] * r1[i][j] for i in range(len(r1))) for j in range(n)])
    return row_basis(gens, n) if gens else []


def lattice_contains(B, v) -> bool:
    basis = row_basis(B)
    return _solve_echelon(basis, v) is not None


def abelian_subquotient(n: int, relations, upper, lower) -> AbelianGroupStructure:
    """Structure of ``(span(upper) + span(relations)) / (span(lower) + span(relations))``.

    All generators are vectors in ``Z^n`` (dense sequences or ``{col: val}``
    dicts).  Raises :class:`ContainmentError` if some lower generator is not
    in the upper subgroup.
    """
    R = _as_dicts(relations)
    A = _as_dicts(upper)
    B = _as_dicts(lower)

    # pass to the cokernel of the relations
    _, R1, passive = kernels.eliminate_unit_pivots(R + A + B, len(R))
    A1, B1 = passive[: len(A)], passive[len(A):]

    # containment: lower generators must vanish modulo upper + relations
    _, RC, BC = kernels.eliminate_unit_pivots(A1 + R1 + B1, len(A1) + len(R1))
    cols = sorted(set().union(*RC, *BC))
    basis = kernels.hermite_rows(_densify(RC, cols), len(cols))
    for idx, b in enumerate(BC):
        if b and _solve_echelon(basis, _densify([b], cols)[0]) is None:
            raise ContainmentError(idx, lower[idx])

    # quotient by lower + relations, then take the image of upper
    _, R2, A2 = kernels.eliminate_unit_pivots(B1 + R1 + A1, len(B1) + len(R1))
    cols = sorted(set().union(*R2, *A2))
    R2d = _densify(R2, cols)
    L = kernels.hermite_rows(R2d + _densify(A2, cols), len(cols))
    coords = []
    for r in R2d:
        y = _solve_echelon(L, r)
        if y is None:
            raise AssertionError("relation outside the lattice it generates")
        coords.append(y)
    return cokernel(coords, len(L)) if L else AbelianGroupStructure()


def _as_dicts(vectors) -> list[dict]:
    out = []
    for v in vectors:
        if isinstance(v, dict):
            out.append({c: x for c, x in v.items() if x})
        else:
            out.append({j: x for j, x in enumerate(v) if x})
    return out


def _densify(rows: Sequence[dict], cols: Sequence[int]) -> list[list[int]]:
    index = {c: k for k, c in enumerate(cols)}
    out = []
    for r in rows:
        row = [0] * len(cols)
        for c, v in r.items():
            row[index[c]] = v
        out.append(row)
    return out
