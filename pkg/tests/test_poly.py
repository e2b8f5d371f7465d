import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gkmtools.poly import Polynomial, divide_by_linear, homogeneous_monomials, \
    substitution_matrix

X, Y, Z = sympy.symbols("x y z")


def to_sympy(f: Polynomial):
    gens = (X, Y, Z)[:f.k]
    return sum((c * sympy.prod([g ** p for g, p in zip(gens, e)])
                for e, c in f.terms.items()), sympy.Integer(0))


def var(i, k=3):
    return Polynomial.variable(k, i)


x, y, z = var(0), var(1), var(2)


def test_monomial_lists():
    assert homogeneous_monomials(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert len(homogeneous_monomials(3, 2)) == 6
    assert homogeneous_monomials(2, 0) == ((0, 0),)
    assert homogeneous_monomials(3, 2)[:2] == ((2, 0, 0), (1, 1, 0))


def test_arithmetic_and_repr():
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert repr(f) == "x^2 - y^2"
    assert (x + 1) ** 2 == x * x + 2 * x + 1
    assert f(2, 1, 5) == 3
    assert Polynomial.from_vector(3, 1, [1, 2, 3]) == x + 2 * y + 3 * z
    assert (x * z).to_vector(2) == [0, 0, 1, 0, 0, 0]


def test_divide_examples():
    q, ok = divide_by_linear(x * z, (1, 0, 0))
    assert ok and q == z
    _, ok = divide_by_linear(x + y, (1, -1, 0))
    assert not ok
    q, ok = divide_by_linear(x * x - y * y, (1, -1, 0))
    assert ok and q == x + y


def test_divide_errors():
    with pytest.raises(ValueError):
        divide_by_linear(x, (0, 0, 0))
    with pytest.raises(ValueError):
        divide_by_linear(2 * x, (2, 0, 0), mode="integer")
    q, ok = divide_by_linear(2 * x, (2, 0, 0))
    assert ok and q == Polynomial.constant(3, 1)


polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    st.integers(-5, 5), max_size=5).map(lambda t: Polynomial(3, t))
forms = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any)


@settings(max_examples=200, deadline=None)
@given(polys, forms)
def test_divide_round_trip(f, a):
    lin = Polynomial.linear(a)
    q, ok = divide_by_linear(f * lin, a)
    assert ok and q == f
    q2, ok2 = divide_by_linear(f, a)
    rem = sympy.reduced(to_sympy(f), [to_sympy(lin)], X, Y, Z)[1]
    assert ok2 == (sympy.expand(rem) == 0)
    if ok2:
        assert q2 * lin == f


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


def test_substitution_matrix_matches_substitute():
    w = [[1, 0], [0, 1], [1, 1]]            # x = s, y = t, z = s + t
    f = x * z + 3 * y * y
    dim, cols = substitution_matrix(w, 2)
    assert dim == 3
    vec = f.to_vector(2)
    out = [0] * dim
    for j, c in enumerate(vec):
        for i, v in cols[j].items():
            out[i] += c * v
    assert Polynomial.from_vector(2, 2, out) == f.substitute(w)
