from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quon_energy import zagier
from quon_energy.group_algebra import (
    GroupAlgebraElement,
    SingularSpecializationError,
    XGroupPolynomial,
    alpha,
    alpha_inverse,
    multiply,
)
from quon_energy.permutation import Permutation, all_permutations, perm_index, t1k
from quon_energy.scalar import QPolynomial, QRational

Q = QRational.q()


def e(n):
    return GroupAlgebraElement.identity(n)


def test_multiply_examples():
    t = t1k(2, 2)
    x = GroupAlgebraElement(2, {t: Q, Permutation.identity(2): 3})
    assert multiply(e(2), x) == x
    lhs = (e(2) + GroupAlgebraElement.basis(t, Q)) * (e(2) - GroupAlgebraElement.basis(t, Q))
    assert lhs == e(2).scale(1 - Q ** 2)


def test_multiply_degree_mismatch():
    with pytest.raises(ValueError):
        multiply(e(2), e(3))


def test_alpha_examples():
    assert alpha(1) == e(1)
    assert alpha(2) == e(2) + GroupAlgebraElement.basis(t1k(2, 2), Q)
    assert alpha(3).coefficient(Permutation((3, 2, 1))) == Q ** 3


def test_alpha_inverse_examples():
    assert alpha_inverse(1) == e(1)
    t = t1k(2, 2)
    expected = (e(2) - GroupAlgebraElement.basis(t, Q)).scale(1 / (1 - Q ** 2))
    assert alpha_inverse(2) == expected
    assert alpha_inverse(2, Fraction(1, 2)).coefficient(Permutation.identity(2)) == Fraction(4, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_two_sided_inverse_symbolic(n):
    a, g = alpha(n), alpha_inverse(n)
    assert a * g == e(n) == g * a


@pytest.mark.parametrize("q0", [Fraction(1, 3), Fraction(-1, 2), Fraction(2, 5)])
def test_two_sided_inverse_n5(q0):
    a, g = alpha(5, q0), alpha_inverse(5, q0)
    assert a * g == e(5) == g * a


def test_symbolic_n5_needs_opt_in():
    with pytest.raises(ValueError):
        alpha_inverse(5)


@pytest.mark.parametrize("q0", [1, -1, Fraction(1), Fraction(-1)])
def test_singular_specialization(q0):
    with pytest.raises(SingularSpecializationError):
        alpha_inverse(3, q0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_matches_inverse_matrix_column(n):
    inv = zagier.invert(zagier.build(n))
    col = perm_index(n)[Permutation.identity(n)]
    g = alpha_inverse(n)
    for i, p in enumerate(all_permutations(n)):
        assert g.coefficient(p) == inv[i][col]


def test_specialization_commutes_with_inversion():
    q0 = Fraction(2, 7)
    assert alpha_inverse(3).evaluate(q0) == alpha_inverse(3, q0)


def test_json_rendering():
    data = alpha_inverse(2).to_json()
    assert data["n"] == 2
    assert [t["perm"] for t in data["terms"]] == [[1, 2], [2, 1]]
    assert data["terms"][0]["coeff"] == "(-1)/(-1 + q^2)"


perm4 = st.sampled_from(all_permutations(4))
coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
sparse4 = st.dictionaries(perm4, coef, max_size=4).map(lambda d: GroupAlgebraElement(4, d))


@given(sparse4, sparse4, sparse4)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(sparse4, sparse4, sparse4)
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


def test_x_polynomial_degree_bound():
    with pytest.raises(ValueError):
        XGroupPolynomial(2, {(Permutation.identity(2), 2): 1})


def test_x_product_rejects_overflowing_degree():
    x = XGroupPolynomial(2, {(Permutation.identity(2), 1): Q})
    with pytest.raises(ValueError):
        x * x


def test_zero_terms_not_stored():
    x = GroupAlgebraElement(2, {Permutation.identity(2): 0, t1k(2, 2): QPolynomial()})
    assert x.terms == {}
