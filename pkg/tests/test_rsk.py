from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbirkhoff.birkhoff import col_sums, diagonal_sum, max_chain_sum, permutation_matrix, row_sums
from rbirkhoff.errors import NegativeEntry, NonIntegerInput, NotAValidGluing, NotInCone, ShapeMismatch
from rbirkhoff.gtpatterns import is_monotone
from rbirkhoff.rsk import (
    TableauPair,
    biword,
    content,
    glue,
    is_semistandard,
    rho,
    rho_2x2,
    rho_inverse,
    rsk_forward,
    rsk_inverse,
    shape,
    tableau_to_gt,
    unglue,
)

F = Fraction


def int_matrices(max_n=5, max_entry=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, max_entry), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def rat_matrices(max_n=5):
    entry = st.builds(F, st.integers(0, 6), st.sampled_from([1, 2, 3, 4, 6]))
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_permutation_example():
    # w = 231: insert 2, 3, 1
    pq = rsk_forward(permutation_matrix([1, 2, 0]))
    assert pq.P == ((1, 3), (2,))
    assert pq.Q == ((1, 2), (3,))


def test_biword_order():
    assert biword([[1, 0], [2, 1]]) == [(1, 1), (2, 1), (2, 1), (2, 2)]


def test_glue_examples():
    assert glue(rsk_forward([[1, 0], [0, 1]]), 2) == ((0, 1), (1, 2))
    assert glue(rsk_forward(permutation_matrix([2, 1, 0])), 3) == ((1, 1, 1),) * 3


def test_tableau_to_gt():
    G = tableau_to_gt(((1, 1, 2), (2,)), 2)
    assert G.rows == ((3, 2), (1,))
    assert G.shape == (3, 1) and G.content == (2, 2)
    assert G.is_valid()


def test_rho_examples():
    h = F(1, 2)
    assert rho([[h, h], [h, h]]) == ((h, 1), (1, 3 * h))
    assert rho_inverse([[h, 1], [1, 3 * h]]) == ((h, h), (h, h))


def test_errors():
    with pytest.raises(NonIntegerInput):
        rsk_forward([[F(1, 2)]])
    with pytest.raises(NegativeEntry):
        rsk_forward([[-1]])
    with pytest.raises(NegativeEntry):
        rho([[F(-1, 2)]])
    with pytest.raises(ShapeMismatch):
        rsk_inverse(TableauPair(((1,),), ((1, 1),)))
    with pytest.raises(NotAValidGluing):
        unglue([[0, 5], [0, 0]])
    with pytest.raises(NotInCone):
        rho_inverse([[1, 0], [0, 1]])


@settings(max_examples=300, deadline=None)
@given(int_matrices())
def test_rsk_properties(X):
    n = len(X)
    pq = rsk_forward(X)
    assert is_semistandard(pq.P) and is_semistandard(pq.Q)
    assert shape(pq.P) == shape(pq.Q)
    assert content(pq.P, n) == tuple(col_sums(X))
    assert content(pq.Q, n) == tuple(row_sums(X))
    # Schensted: the first row is the longest weakly increasing subword
    assert (shape(pq.P)[0] if pq.P else 0) == max_chain_sum(X)
    assert rsk_inverse(pq, n) == tuple(map(tuple, X))


@settings(max_examples=300, deadline=None)
@given(int_matrices())
def test_glue_properties(X):
    n = len(X)
    pq = rsk_forward(X)
    Y = glue(pq, n)
    assert is_monotone(Y) and Y[0][0] >= 0
    alpha, beta = row_sums(X), col_sums(X)
    for ell in range(n):
        assert diagonal_sum(Y, ell) == sum(alpha[: n - ell])
        assert diagonal_sum(Y, -ell) == sum(beta[: n - ell])
    assert Y[n - 1][n - 1] == max_chain_sum(X)
    assert unglue(Y) == pq


@settings(max_examples=200, deadline=None)
@given(rat_matrices(), st.integers(2, 6))
def test_rho_homogeneous_and_invertible(X, c):
    Y = rho(X)
    assert rho([[c * x for x in r] for r in X]) == tuple(tuple(c * y for y in r) for r in Y)
    assert rho_inverse(Y) == tuple(tuple(F(x) for x in r) for r in X)


@settings(max_examples=200, deadline=None)
@given(rat_matrices(max_n=2).filter(lambda X: len(X) == 2))
def test_rho_2x2_closed_form(X):
    assert rho(X) == rho_2x2(X)
