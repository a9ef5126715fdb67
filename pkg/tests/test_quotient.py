import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from delsarte.linalg import IntMatrix, hermite_normal_form
from delsarte.quotient import (
    PERMUTATIONS,
    FiniteQuotient,
    QuotientError,
    classify,
    element_order_in_quotient,
    parse_kernel_matrix,
    subgroup_orders,
)
from tests.conftest import random_quotients, random_unimodular


def test_from_kernel_matrix_basics():
    q = FiniteQuotient.from_kernel_matrix(IntMatrix.identity(3).rows)
    assert q.order == 1
    q = FiniteQuotient.from_kernel_matrix([[3, 0, 0], [0, 3, 0], [0, 0, 3]])
    assert (q.order, q.exponent, q.factors) == (27, 3, (3, 3, 3))
    q = FiniteQuotient.from_kernel_matrix(parse_kernel_matrix("diag(1,8,8)*[[0,3,1],[1,0,0],[0,1,0]]"))
    assert q.order == 64


def test_singular_kernel_rejected():
    with pytest.raises(QuotientError, match="kernel not finite index"):
        FiniteQuotient.from_kernel_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])


def test_special_constructors():
    assert FiniteQuotient.fermat(1).order == 1
    q = FiniteQuotient.diagonal(2, 4, 4)
    assert (q.order, q.factors) == (32, (2, 4, 4))
    c = FiniteQuotient.from_kernel_matrix([[1, 1, 0], [3, 0, 3], [0, 0, 4]])
    assert c.factors == (1, 1, 12)
    assert classify(c).is_cyclic


def test_cyclic_constructor_validation():
    with pytest.raises(QuotientError) as e:
        FiniteQuotient.cyclic(6, (1, 1, 1, 1))
    assert e.value.condition == "sum"
    with pytest.raises(QuotientError) as e:
        FiniteQuotient.cyclic(4, (0, 2, 2, 0))
    assert e.value.condition == "gcd"


def test_exponent_matrix():
    for m in (1, 2, 3, 5):
        A = [[m * (i == j) for j in range(4)] for i in range(4)]
        assert FiniteQuotient.from_exponent_matrix(A) == FiniteQuotient.fermat(m)
    with pytest.raises(QuotientError) as e:
        FiniteQuotient.from_exponent_matrix([[1, -1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert e.value.condition == "1"
    with pytest.raises(QuotientError) as e:
        FiniteQuotient.from_exponent_matrix([[1, 1, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]])
    assert e.value.condition == "2"
    with pytest.raises(QuotientError) as e:
        FiniteQuotient.from_exponent_matrix([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert e.value.condition == "3"


def test_exponent_matrix_example():
    A = [[1, 1, 1, 0], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]]
    det = IntMatrix(A).det()
    assert abs(det) == 3
    q = FiniteQuotient.from_exponent_matrix(A)
    # all cofactors of this matrix are +-1 or +-2 with gcd 1, so m = 3 ...
    # ... and the images of the four monomial exponents already span Z^3
    assert q.order == 1
    for e in ([3, 0, 0], [0, 3, 0], [0, 0, 3]):
        assert q.encode(e) == (0, 0, 0)


def test_exponent_conventions_agree_on_diagonal():
    for ms in ((2, 2, 2, 2), (3, 3, 3, 3)):
        A = [[ms[i] * (i == j) for j in range(4)] for i in range(4)]
        assert FiniteQuotient.from_exponent_matrix(A, "row") == FiniteQuotient.from_exponent_matrix(A, "column")


def test_subgroup_orders_fermat():
    for m in range(1, 7):
        so = subgroup_orders(FiniteQuotient.fermat(m))
        assert set(so.g_ij.values()) == {m}
        assert set(so.g_i.values()) == {m}
        assert so.delta == (m % 2 == 0)


def test_subgroup_orders_cyclic():
    so = subgroup_orders(FiniteQuotient.cyclic(6, (1, 1, 2, 2)))
    assert sorted(so.g_ij.values()) == [1, 1, 1, 1, 1, 2]
    assert so.g_i == {1: 3, 2: 1, 3: 1}
    assert so.delta == 0


def test_element_orders():
    q = FiniteQuotient.fermat(5)
    assert element_order_in_quotient(q, [0, 1, 0, 0]) == 5
    assert element_order_in_quotient(q, [0, 1, 0, 0], [[0, 1, 0, 0]]) == 1
    d = FiniteQuotient.diagonal(2, 4, 4)
    # t1 modulo t2 t3: (Z/2 + Z/4 + Z/4)/<(0,1,1)> still sees t1 with order 2
    assert element_order_in_quotient(d, [0, 1, 0, 0], [[0, 0, 1, 1]]) == 2


def test_classify_fermat():
    c = classify(FiniteQuotient.fermat(4))
    assert c.is_fermat and c.is_diagonal and not c.is_cyclic
    assert c.diagonal_m == (4, 4, 4)
    assert classify(FiniteQuotient.fermat(1)).is_cyclic


def test_parse_errors_carry_position():
    with pytest.raises(QuotientError) as e:
        parse_kernel_matrix("[[1,2,3],[4,5,6],[7,8,x]]")
    assert e.value.position == "[[1,2,3],[4,5,6],[7,8,x]]".index("x")
    assert parse_kernel_matrix(" [[1, -2,3],[4,5,6],[7,8,9]] ")[0] == [1, -2, 3]
    assert parse_kernel_matrix("[[−1,0,0],[0,1,0],[0,0,1]]")[0][0] == -1


def test_invariants_on_random_quotients():
    for q in random_quotients(11, 40):
        d = q.factors
        assert d[0] * d[1] * d[2] == q.order == abs(IntMatrix(q.kernel_matrix).det())
        assert (q.exponent ** 3 // q.order) * q.order == q.exponent ** 3
        assert (q.height ** 2) % (q.exponent ** 3 // q.order) == 0
        imgs = q.generator_images
        assert q.add(imgs[0], q.add(imgs[1], q.add(imgs[2], imgs[3]))) == (0, 0, 0)


@given(st.randoms(use_true_random=False))
def test_classify_invariant_under_row_changes(rng):
    q = random_quotients(rng.randint(0, 10**6), 1)[0]
    U = IntMatrix(random_unimodular(rng))
    q2 = FiniteQuotient.from_kernel_matrix((U @ IntMatrix(q.kernel_matrix)).rows)
    assert q2 == q
    assert classify(q2) == classify(q)
    assert subgroup_orders(q2) == subgroup_orders(q)


def test_permutation_round_trip():
    q = FiniteQuotient.from_kernel_matrix([[1, 1, 0], [3, 0, 3], [0, 0, 4]])
    for perm in PERMUTATIONS:
        qp = q.permuted(perm)
        assert qp.order == q.order
        imgs, pimgs = q.generator_images, qp.generator_images
        for i in range(4):
            assert q.element_order(imgs[perm[i]]) == qp.element_order(pimgs[i])


def test_cyclic_round_trip():
    from delsarte.cyclic import canonical_weights, cyclic_weights

    rng = random.Random(4)
    for _ in range(30):
        m = rng.randint(2, 30)
        w = [rng.randrange(m) for _ in range(3)]
        if gcd(m, *w) != 1:
            continue
        w = [(-sum(w)) % m] + w
        c = cyclic_weights(FiniteQuotient.cyclic(m, w))
        assert c.weights == canonical_weights(m, w)
