from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rbirkhoff.birkhoff import build_restricted_birkhoff, count_lattice_points_direct
from rbirkhoff.ehrhart import (
    CountFunction,
    binomial_basis,
    ehrhart_polynomial,
    evaluate,
    interpolate_polynomial,
    quasi_polynomial,
    reciprocity_check,
)
from rbirkhoff.errors import DegreeOverflow, NoPeriodFound, NotAPolynomial
from rbirkhoff.exactgeom import HPolytope, affine_dim, vertex_denominators, vertices
from rbirkhoff.gtpatterns import build_M, count_M_diagonal_DP

F = Fraction
B32 = (F(1), F(2), F(17, 12), F(1, 2), F(1, 12))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100), min_size=1, max_size=8))
def test_interpolation_recovers_polynomial(coeffs):
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    pts = [(t, evaluate(coeffs, t)) for t in range(1, len(coeffs) + 3)]
    assert interpolate_polynomial(pts, degree=len(coeffs) - 1) == tuple(coeffs)
    assert interpolate_polynomial(pts) == tuple(coeffs)


def test_interpolation_degree_overflow():
    with pytest.raises(DegreeOverflow):
        interpolate_polynomial([(0, 0), (1, 1), (2, 4)], degree=1)
    assert interpolate_polynomial([(1, 1), (2, 1), (3, 1)]) == (1,)


def test_B32_polynomial():
    f = CountFunction(lambda t: count_lattice_points_direct((3, 2), t), 4)
    fit = ehrhart_polynomial(f)
    assert fit.coeffs == B32
    assert fit.value_at_zero == 1
    assert fit.nodes == (1, 2, 3, 4, 5) and fit.verified == (6, 7, 8)
    assert all(fit(t) == 2 * comb(t + 3, 4) + comb(t + 2, 2) for t in range(12))


def test_point_polynomial():
    f = CountFunction.from_polytope(build_restricted_birkhoff((4, 1)))
    assert f.dim == 0
    assert ehrhart_polynomial(f).coeffs == (1,)


def test_segment():
    seg = HPolytope(1, (([1], 1), ([-1], 0)))
    f = CountFunction.from_polytope(seg)
    assert ehrhart_polynomial(f).coeffs == (1, 1)
    q = quasi_polynomial(f, 1)
    assert q.period == 1 and q.constituents == ((1, 1),)


def test_half_segment_has_period_two():
    seg = HPolytope(1, (([2], 1), ([-1], 0)))  # [0, 1/2]
    f = CountFunction.from_polytope(seg)
    with pytest.raises(NotAPolynomial):
        ehrhart_polynomial(f)
    q = quasi_polynomial(f, 2)
    assert q.period == 2 and q.failed_periods == (1,)
    assert all(q(t) == t // 2 + 1 for t in range(1, 20))
    assert not q.collapsed


def test_no_period_found():
    seg = HPolytope(1, (([3], 1), ([-1], 0)))  # [0, 1/3] with a wrong lcm
    with pytest.raises(NoPeriodFound):
        quasi_polynomial(CountFunction.from_polytope(seg), 2)


def test_period_collapse_M33():
    M = build_M(3, 3)
    V = vertices(M)
    lcm = vertex_denominators(V)[1]
    assert lcm == 2
    f = CountFunction(lambda t: count_M_diagonal_DP((3, 3), t), affine_dim(M, V))
    q = quasi_polynomial(f, lcm)
    assert q.period == 1 and q.collapsed
    assert all(q(t) == oracles.magic_squares_3(t) for t in range(1, 11))


def test_reciprocity_report_B32():
    B = build_restricted_birkhoff((3, 2))
    value, interior = reciprocity_check(B32, B)
    assert value == 0 and interior == 0


def test_binomial_basis():
    h = binomial_basis(B32)
    assert all(sum(h[i] * comb(t + 4 - i, 4) for i in range(5)) == evaluate(B32, t) for t in range(10))


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_degree_and_leading_coefficient(n, k):
    f = CountFunction(lambda t: count_M_diagonal_DP((n, k), t), (n - 1) ** 2)
    fit = ehrhart_polynomial(f)
    assert fit.degree == affine_dim(build_restricted_birkhoff((n, k)))
    assert fit.coeffs[-1] > 0
    # the fit reproduces every count it was built from
    assert all(fit(t) == f(t) for t in fit.nodes + fit.verified)
