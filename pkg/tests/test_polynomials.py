import random

import sympy
from hypothesis import given
from hypothesis import strategies as st

from delsarte.polynomials import FieldPolyMatrix, Poly, cyclotomic, poly_gcd, poly_smith_normal_form

t = sympy.symbols("t")


def to_sympy(f: Poly):
    if f.p:
        return sympy.Poly(list(reversed(f.int_coeffs())) or [0], t, modulus=f.p)
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)]
    return sympy.Poly(coeffs or [0], t, domain="QQ")


def test_cyclotomic_small():
    assert cyclotomic(1).int_coeffs() == [-1, 1]
    assert cyclotomic(2).int_coeffs() == [1, 1]
    assert cyclotomic(6).int_coeffs() == [1, -1, 1]


def test_cyclotomic_matches_sympy():
    for d in range(1, 60):
        assert to_sympy(cyclotomic(d)).as_expr() == sympy.cyclotomic_poly(d, t)


def test_arithmetic_mod_p():
    f = Poly([1, 1], 2)  # t + 1 = t - 1 over F_2
    assert f == Poly([-1, 1], 2)
    assert (f * f) == Poly([1, 0, 1], 2)
    q, r = divmod(Poly([1, 0, 1], 3), Poly([1, 1], 3))
    assert q * Poly([1, 1], 3) + r == Poly([1, 0, 1], 3)


def test_snf_examples():
    z = Poly()
    a, b = Poly([-1, 1]), Poly([1, 1])
    assert poly_smith_normal_form(FieldPolyMatrix([[a, z], [z, b]])) == [Poly([1]), Poly([-1, 0, 1])]
    assert poly_smith_normal_form(FieldPolyMatrix([[a, z], [z, a * b]])) == [a, a * b]
    assert poly_smith_normal_form(FieldPolyMatrix([])) == []


def _det_gcds(rows, p):
    """gcd of all r x r minors, via sympy, for r = 1..min(m, n)."""
    M = sympy.Matrix([[to_sympy(x).as_expr() for x in r] for r in rows])
    m, n = M.shape
    out = []
    import itertools

    for r in range(1, min(m, n) + 1):
        g = sympy.Integer(0)
        for rs in itertools.combinations(range(m), r):
            for cs in itertools.combinations(range(n), r):
                g = sympy.gcd(g, M.extract(list(rs), list(cs)).det(), modulus=p or None) if p else sympy.gcd(g, M.extract(list(rs), list(cs)).det())
        out.append(sympy.Poly(g, t, modulus=p or None).monic() if g != 0 else None)
    return out


polys = st.lists(st.integers(-3, 3), min_size=0, max_size=4)


@given(st.lists(st.lists(polys, min_size=3, max_size=3), min_size=2, max_size=3), st.sampled_from([0, 2, 3]))
def test_snf_matches_minor_gcds(raw, p):
    rows = [[Poly(c, p) for c in r] for r in raw]
    factors = poly_smith_normal_form(FieldPolyMatrix(rows, p))
    for a, b in zip(factors, factors[1:]):
        assert a.divides(b)
    gcds = _det_gcds(rows, p)
    prod = Poly([1], p)
    for r, f in enumerate(factors):
        if not f:
            assert gcds[r] is None
            break
        prod = prod * f
        assert to_sympy(prod.monic()).as_expr() == gcds[r].as_expr()


def test_gcd():
    a = Poly([-1, 0, 1])
    b = Poly([-1, 0, 0, 1])
    assert poly_gcd(a, b) == Poly([-1, 1])


def test_mod_p_degree_profile_matches_integer_snf():
    from delsarte.linalg import smith_normal_form

    rng = random.Random(7)
    for _ in range(20):
        A = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)]
        d = smith_normal_form(A).diagonal
        for p in (5, 7, 11):
            if any(x and x % p == 0 for x in d):
                continue
            got = poly_smith_normal_form(FieldPolyMatrix([[Poly([x], p) for x in r] for r in A], p))
            assert sum(1 for f in got if f) == sum(1 for x in d if x)
