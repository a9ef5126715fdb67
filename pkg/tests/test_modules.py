import pytest

from delsarte.linalg import AbelianGroupStructure
from delsarte.modules import (
    GroupRingElement,
    Ring,
    all_torsion_bounds,
    best_torsion_bound,
    filtration_layer,
    filtration_subquotient,
    module_rank_torsion,
    present_Am,
    present_Bprime,
    torsion_bound,
)
from delsarte.paper_examples import diagonal_s_bar
from delsarte.quotient import FiniteQuotient, subgroup_orders

CYCLIC12 = [[1, 1, 0], [3, 0, 3], [0, 0, 4]]


def test_group_ring_arithmetic():
    q = FiniteQuotient.diagonal(2, 3, 3)
    R = Ring(q)
    a = R.t(1) - R.one
    b = R.t(2) + R.one
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    assert R.t(1, 2) == R.one  # order 2
    assert not (R.one - R.one)
    assert isinstance(a * 3, GroupRingElement)


def test_expansion_shape_and_translates():
    q = FiniteQuotient.diagonal(2, 2, 4)
    p = present_Am(q)
    M = p.expansion()
    assert M.shape == (6 * q.order, 6 * q.order)
    rows = p.relation_rows()
    # each block of |G| rows consists of translates: same multiset of values
    n = q.order
    for b in range(6):
        block = rows[b * n:(b + 1) * n]
        assert len({tuple(sorted(r.values())) for r in block}) == 1


def test_trivial_quotient():
    q = FiniteQuotient.fermat(1)
    assert module_rank_torsion(present_Am(q)) == (6, AbelianGroupStructure())
    assert module_rank_torsion(present_Bprime(q))[0] == 3


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_fermat_am(m):
    q = FiniteQuotient.fermat(m)
    rank, torsion = module_rank_torsion(present_Am(q))
    delta = int(m % 2 == 0)
    assert torsion.is_trivial
    assert rank == 9 * m - 6 - delta + q.order - 1 + 3


@pytest.mark.parametrize(
    "kernel,expected",
    [
        ([[1, 0, 0], [0, 9, 0], [0, 0, 9]], None),
        ("golden7", [3, 3, 9]),
        ("prime6-2", [5, 5, 5]),
    ],
)
def test_am_torsion_examples(kernel, expected):
    from delsarte.paper_examples import GOLDEN

    if kernel == "golden7":
        q = GOLDEN[6].quotient()
    elif kernel == "prime6-2":
        q = GOLDEN[10].quotient()
    else:
        q = FiniteQuotient.from_kernel_matrix(kernel)
        expected = []
    assert list(module_rank_torsion(present_Am(q))[1].torsion_factors) == expected


@pytest.mark.parametrize("ms", [(2, 4, 4), (2, 6, 6), (2, 8, 8), (4, 6, 12)])
def test_diagonal_bprime(ms):
    q = FiniteQuotient.diagonal(*ms)
    s = diagonal_s_bar(*ms)
    assert module_rank_torsion(present_Bprime(q))[1] == AbelianGroupStructure.cyclic(s)
    b = torsion_bound(q)
    assert (b.n_bar, b.p_bar, b.q_bar, b.s_bar) == ((1, 1, 1), (1, 1), 1, s)


def test_cyclic_filtration_layers():
    q = FiniteQuotient.from_kernel_matrix(CYCLIC12)
    assert list(filtration_subquotient(q, "B", 3).torsion_factors) == [2, 4]
    assert list(filtration_subquotient(q, "B'", 3).torsion_factors) == [2, 4, 4]


def test_cyclic_bounds():
    q = FiniteQuotient.from_kernel_matrix(CYCLIC12)
    b = torsion_bound(q)
    assert (b.p_bar, b.q_bar, b.s_bar) == ((2, 2), 1, 1)
    b = torsion_bound(q, (0, 2, 1, 3))
    assert (b.p_bar, b.q_bar, b.s_bar) == ((1, 1), 1, 1)
    assert best_torsion_bound(q).permutation == (0, 2, 1, 3)


def test_fermat_bound_trivial():
    for m in (2, 3, 4):
        b = best_torsion_bound(FiniteQuotient.fermat(m))
        assert b.bound_order == 1
        assert all(x.is_trivial for x in b.bound_layers)


def test_best_bound_diagonal():
    b = best_torsion_bound(FiniteQuotient.diagonal(2, 4, 4))
    assert b.bound_order == 2


def test_bound_soundness_and_invariants(random_fixtures):
    for q in random_fixtures[:20]:
        _, T = module_rank_torsion(present_Am(q))
        delta = subgroup_orders(q).delta
        for b in all_torsion_bounds(q):
            assert b.bound_order % T.order == 0
            if delta:
                assert b.s_bar % b.q_bar == 0
            else:
                assert b.s_bar == 1


def test_level_four_matches_am(random_fixtures):
    for q in random_fixtures[:12]:
        p = present_Am(q)
        rank, T = module_rank_torsion(p)
        b4 = filtration_layer(p, 4, 0)
        assert b4.torsion == T
        assert rank - q.order + 1 == b4.free_rank + 3


def test_bad_levels():
    q = FiniteQuotient.fermat(2)
    with pytest.raises(ValueError):
        filtration_subquotient(q, "B", 0)
    with pytest.raises(ValueError):
        filtration_subquotient(q, "C", 1)
