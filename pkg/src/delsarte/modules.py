"""Modules over the group ring Z[G] and their integer expansions.

A module with generators x_1..x_k and relations r_1..r_s (each a k-tuple of
group-ring elements) is expanded to an integer relation matrix: the columns
are indexed by (generator, g) and the rows by (relation, g), row (r, g) being
the translate g * r.  Integral rank and torsion of the module are then those
of the cokernel of this matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Sequence

from .linalg import (
    AbelianGroupStructure,
    SparseIntMatrix,
    abelian_subquotient,
    cokernel,
    direct_sum,
)
from .quotient import (
    IDENTITY,
    PERMUTATIONS,
    T,
    FiniteQuotient,
    add_vec,
    subgroup_orders,
)


class GroupRingElement:
    """Finite Z-linear combination of elements of G."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FiniteQuotient, terms=None):
        self.group = group
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, group, element, coeff=1):
        return cls(group, {element: coeff})

    @classmethod
    def word(cls, group, word, coeff=1):
        """coeff * t0^w0 t1^w1 t2^w2 t3^w3."""
        return cls(group, {group.image(word): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElement(self.group, out)

    def __neg__(self):
        return GroupRingElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, {g: c * other for g, c in self.terms.items()})
        add = self.group.add
        out = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = add(g, h)
                out[k] = out.get(k, 0) + a * b
        return GroupRingElement(self.group, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GroupRingElement({self.terms!r})"


class Ring:
    """Shorthand constructors for elements of Z[G]."""

    def __init__(self, group: FiniteQuotient):
        self.group = group
        self.zero = GroupRingElement(group)
        self.one = GroupRingElement.of(group, (0, 0, 0))

    def t(self, i: int, power: int = 1) -> GroupRingElement:
        w = [0, 0, 0, 0]
        w[i] = power
        return GroupRingElement.word(self.group, w)

    def tt(self, i: int, j: int) -> GroupRingElement:
        w = [0, 0, 0, 0]
        w[i] += 1
        w[j] += 1
        return GroupRingElement.word(self.group, w)


@dataclass
class ModulePresentation:
    """Finitely presented Z[G]-module."""

    generator_names: tuple
    group: FiniteQuotient
    relations: list

    @property
    def n_columns(self) -> int:
        return len(self.generator_names) * self.group.order

    def vector_rows(self, element: Sequence[GroupRingElement]) -> list[dict]:
        """The |G| translates g * element as sparse integer rows."""
        q = self.group
        n = q.order
        index = q.index
        add = q.add
        terms = [
            (k * n, list(coeff.terms.items()))
            for k, coeff in enumerate(element)
            if coeff
        ]
        out = []
        for g in q.elements:
            row = {}
            for base, items in terms:
                for h, c in items:
                    col = base + index(add(g, h))
                    v = row.get(col, 0) + c
                    if v:
                        row[col] = v
                    else:
                        row.pop(col, None)
            out.append(row)
        return out

    def relation_rows(self) -> list[dict]:
        rows = []
        for rel in self.relations:
            rows.extend(self.vector_rows(rel))
        return rows

    def expansion(self) -> SparseIntMatrix:
        return SparseIntMatrix(self.relation_rows(), self.n_columns)

    def generator(self, name: str) -> int:
        return self.generator_names.index(name)

    def element(self, **coeffs: GroupRingElement) -> tuple:
        """Module element given as ``name=coefficient`` pairs."""
        ring = Ring(self.group)
        out = [ring.zero] * len(self.generator_names)
        for name, c in coeffs.items():
            out[self.generator(name)] = c
        return tuple(out)


def present_Am(q: FiniteQuotient) -> ModulePresentation:
    R = Ring(q)
    one = R.one
    t1, t2, t3 = R.t(1), R.t(2), R.t(3)
    z = R.zero
    #        a1          a2          a3            c1       c2       c3
    rels = [
        (z, z, z, R.tt(2, 3) - one, z, z),
        (z, z, z, z, R.tt(1, 3) - one, z),
        (z, z, z, z, z, R.tt(1, 2) - one),
        (z, t3 - one, -(t2 - one), t3 - one, z, z),
        (t3 - one, z, -(t1 - one), z, t3 - one, z),
        (-(t2 - one), t1 - one, z, z, z, t1 - one),
    ]
    return ModulePresentation(("a1", "a2", "a3", "c1", "c2", "c3"), q, rels)


def present_Bprime(q: FiniteQuotient) -> ModulePresentation:
    """Bm(exp G) tensored down to Z[G]: relations (t_j t_k - 1) c_i and c1'' = c2'' + c3''."""
    R = Ring(q)
    one = R.one
    t1, t2, t3 = R.t(1), R.t(2), R.t(3)
    z = R.zero
    rels = [
        (R.tt(2, 3) - one, z, z),
        (z, R.tt(1, 3) - one, z),
        (z, z, R.tt(1, 2) - one),
        ((t1 - one) * (t3 - one), -((t2 - one) * (t3 - one)), -((t3 - one) * (t1 - one))),
    ]
    return ModulePresentation(("c1", "c2", "c3"), q, rels)


def module_rank_torsion(p: ModulePresentation) -> tuple[int, AbelianGroupStructure]:
    """Integral rank and torsion subgroup of the module."""
    structure = cokernel(p.relation_rows(), p.n_columns)
    return structure.free_rank, structure.torsion


# ---------------------------------------------------------------------------
# the filtration B_0 < B_1 < B_2 < B_3 < B_4 = B


def filtration_generators(p: ModulePresentation, level: int) -> list[tuple]:
    """Z[G]-generators of B_level inside the presented module."""
    R = Ring(p.group)
    one = R.one
    t1, t2, t3 = R.t(1), R.t(2), R.t(3)
    if level == 0:
        return []
    if level == 4:
        return [p.element(c1=one), p.element(c2=one), p.element(c3=one)]
    c1p = t3 - one
    c2p = t3 - one
    c3p = t1 - one
    if level == 3:
        return [p.element(c1=c1p), p.element(c2=c2p), p.element(c3=c3p)]
    c1pp = (t1 - one) * c1p
    c2pp = (t2 - one) * c2p
    c3pp = (t3 - one) * c3p
    if level == 2:
        return [p.element(c1=c1pp), p.element(c2=c2pp), p.element(c3=c3pp)]
    if level == 1:
        return [p.element(c2=(t2 - R.t(3, -1)) * c2pp)]
    raise ValueError(f"filtration level must be in 0..4, got {level}")


def _orbit_rows(p: ModulePresentation, level: int) -> list[dict]:
    rows = []
    for gen in filtration_generators(p, level):
        rows.extend(p.vector_rows(gen))
    return rows


def filtration_layer(p: ModulePresentation, upper: int, lower: int) -> AbelianGroupStructure:
    """Structure of B_upper / B_lower for the filtration inside ``p``."""
    if not 0 <= lower <= upper <= 4:
        raise ValueError("need 0 <= lower <= upper <= 4")
    return abelian_subquotient(
        p.n_columns, p.relation_rows(), _orbit_rows(p, upper), _orbit_rows(p, lower)
    )


def filtration_subquotient(q: FiniteQuotient, module_kind: str, level: int) -> AbelianGroupStructure:
    """B_level / B_(level-1) for ``module_kind`` 'B' (inside Am) or "B'"."""
    if level not in (1, 2, 3, 4):
        raise ValueError(f"level must be 1..4, got {level}")
    return filtration_layer(_presentation(q, module_kind), level, level - 1)


def _presentation(q, module_kind):
    if module_kind in ("B", "Am"):
        return present_Am(q)
    if module_kind in ("B'", "Bprime"):
        return present_Bprime(q)
    raise ValueError(f"unknown module kind {module_kind!r}")


# ---------------------------------------------------------------------------
# torsion bounds


@dataclass(frozen=True)
class TorsionBoundParams:
    permutation: tuple
    m: tuple
    n: tuple
    n_jk: dict
    n_bar: tuple
    p: tuple
    p_bar: tuple
    q_bar: int
    s_bar: int
    delta: int

    @property
    def bound_layers(self) -> tuple:
        return (
            direct_sum(AbelianGroupStructure.cyclic(self.q_bar), AbelianGroupStructure.cyclic(self.s_bar)),
            direct_sum(*(AbelianGroupStructure.cyclic(x) for x in self.p_bar)),
            direct_sum(*(AbelianGroupStructure.cyclic(x) for x in self.n_bar)),
        )

    @property
    def bound_order(self) -> int:
        return prod(layer.order for layer in self.bound_layers)

    @property
    def bound_length(self) -> int:
        return sum(layer.length for layer in self.bound_layers)

    def to_dict(self) -> dict:
        return {
            "bound_layers": [list(layer.torsion_factors) for layer in self.bound_layers],
            "bound_order": self.bound_order,
            "m": list(self.m),
            "n": list(self.n),
            "n_bar": list(self.n_bar),
            "n_jk": {k: v for k, v in sorted(self.n_jk.items())},
            "p": list(self.p),
            "p_bar": list(self.p_bar),
            "permutation": list(self.permutation),
            "q_bar": self.q_bar,
            "s_bar": self.s_bar,
        }


def _exact_div(a, b, what):
    if a % b:
        raise AssertionError(f"{what}: {a} is not divisible by {b}")
    return a // b


def torsion_bound(q: FiniteQuotient, permutation: Sequence[int] = IDENTITY) -> TorsionBoundParams:
    perm = tuple(permutation)
    qp = q if perm == IDENTITY else q.permuted(perm)
    so = subgroup_orders(qp)
    G = so.g_ij
    imgs = qp.generator_images
    m = tuple(qp.element_order(imgs[i]) for i in (1, 2, 3))
    n, n_jk, n_bar = {}, {}, {}
    for i in (1, 2, 3):
        j, k = [x for x in (1, 2, 3) if x != i]
        mod = [add_vec(T[j], T[k])]
        n[i] = qp.element_order_modulo(T[i], mod)
        n_jk[f"{j}{k}"] = qp.element_order_modulo(T[j], mod)
        n_bar[i] = _exact_div(n[i], G[(j, k)], f"n_{i}/|G_{j}{k}|")
        alt = _exact_div(n_jk[f"{j}{k}"], G[(0, i)], f"n_{j}{k}/|G_0{i}|")
        if alt != n_bar[i]:
            raise AssertionError(f"n_{i}/|G_{j}{k}| != n_{j}{k}/|G_0{i}|")
    p, p_bar = {}, {}
    for i in (2, 3):
        j, k = [x for x in (1, 2, 3) if x != i]
        p[i] = gcd(n[i], n_jk[f"{j}{k}"])
        p_bar[i] = _exact_div(p[i], so.g_i[5 - i], f"p_{i}/|G_{5 - i}|")
    q_bar = _exact_div(gcd(p[2], p[3]), so.g_i[1], "gcd(p2, p3)/|G_1|")
    if so.delta:
        s = gcd(lcm(n[2], n_jk["13"]), lcm(n[3], n_jk["12"]))
        s_bar = _exact_div(s, so.g_i[1], "s/|G_1|")
        if s_bar % q_bar:
            raise AssertionError("q_bar does not divide s_bar")
    else:
        s_bar = 1
    return TorsionBoundParams(
        permutation=perm,
        m=m,
        n=(n[1], n[2], n[3]),
        n_jk=n_jk,
        n_bar=(n_bar[1], n_bar[2], n_bar[3]),
        p=(p[2], p[3]),
        p_bar=(p_bar[2], p_bar[3]),
        q_bar=q_bar,
        s_bar=s_bar,
        delta=so.delta,
    )


def all_torsion_bounds(q: FiniteQuotient) -> list[TorsionBoundParams]:
    return [torsion_bound(q, perm) for perm in PERMUTATIONS]


def best_torsion_bound(q: FiniteQuotient, bounds=None) -> TorsionBoundParams:
    """The permutation minimising (bound order, bound length), ties to the smallest permutation."""
    bounds = all_torsion_bounds(q) if bounds is None else bounds
    return min(bounds, key=lambda b: (b.bound_order, b.bound_length, b.permutation))
