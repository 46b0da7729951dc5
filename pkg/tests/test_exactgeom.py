from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import box_points, brute_vertices
from rbirkhoff.errors import BudgetExceeded, EmptyPolytope, NotInPolytope, UnboundedPolytope, ZeroDimensional
from rbirkhoff.exactgeom import (
    HPolytope,
    affine_dim,
    affine_rank,
    as_rat,
    count_lattice_points,
    dilate,
    facet_count,
    fmt_rat,
    interior_lattice_points,
    is_vertex,
    lattice_points,
    rank,
    vertex_denominators,
    vertices,
)


def cube(d, side=1):
    ineqs = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        ineqs.append((e, side))
        ineqs.append(([-x for x in e], 0))
    return HPolytope(d, tuple(ineqs))


def simplex(d):
    ineqs = [([-1 if j == i else 0 for j in range(d)], 0) for i in range(d)]
    ineqs.append(([1] * d, 1))
    return HPolytope(d, tuple(ineqs))


def test_as_rat_and_format():
    assert as_rat("3/6") == Fraction(1, 2)
    assert fmt_rat(Fraction(4, 2)) == "2"
    assert fmt_rat(Fraction(-3, 4)) == "-3/4"
    with pytest.raises(TypeError):
        as_rat(0.5)


def test_rank_basic():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[Fraction(1, 2), 0], [0, 3]]) == 2
    assert rank([[0, 0]]) == 0
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]], stop_at=2) == 2
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1


def test_cube_and_simplex():
    C = cube(3)
    V = vertices(C)
    assert len(V) == 8
    assert affine_dim(C, V) == 3
    assert facet_count(C, V) == 6
    S = simplex(4)
    assert len(vertices(S)) == 5
    assert facet_count(S) == 5
    assert count_lattice_points(dilate(S, 3)) == 35  # C(3 + 4, 4)


def test_segment_with_equality():
    # {x + y = 1, x, y >= 0} is a segment
    P = HPolytope(2, (([-1, 0], 0), ([0, -1], 0)), (([1, 1], 1),))
    V = vertices(P)
    assert V.vertices == ((0, 1), (1, 0))
    assert affine_dim(P) == 1
    assert facet_count(P) == 2
    assert lattice_points(dilate(P, 2)) == [(0, 2), (1, 1), (2, 0)]


def test_point_polytope():
    P = HPolytope(2, (([-1, 0], 0),), (([1, 0], 1), ([0, 1], 2)))
    assert vertices(P).vertices == ((1, 2),)
    with pytest.raises(ZeroDimensional):
        facet_count(P)


def test_empty_and_unbounded():
    with pytest.raises(EmptyPolytope):
        vertices(HPolytope(1, (([1], 0), ([-1], -1))))
    with pytest.raises(UnboundedPolytope):
        vertices(HPolytope(2, (([-1, 0], 0), ([0, -1], 0))))
    assert count_lattice_points(HPolytope(1, (([1], 0), ([-1], -1)))) == 0


def test_rational_vertices_and_denominators():
    # triangle with a vertex at (1/2, 1/2)
    P = HPolytope(2, (([-1, 0], 0), ([0, -1], 0), ([2, 2], 2)))
    V = vertices(P)
    per, mx = vertex_denominators(V)
    assert mx == 1
    Q = HPolytope(2, (([-1, 0], 0), ([0, -1], 0), ([2, 0], 1), ([0, 2], 1)))
    assert vertex_denominators(vertices(Q))[1] == 2
    assert count_lattice_points(Q) == 1
    assert count_lattice_points(dilate(Q, 2)) == 4


def test_is_vertex():
    C = cube(2)
    assert is_vertex(C, (1, 1))
    assert not is_vertex(C, (Fraction(1, 2), 1))
    with pytest.raises(NotInPolytope):
        is_vertex(C, (2, 0))


def test_interior_points():
    assert interior_lattice_points(dilate(cube(2), 3)) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_lattice_points(dilate(cube(4), 5), max_nodes=50)


# random 2D/3D polytopes: double description vs brute-force basis enumeration
rows3 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 4)), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(rows3)
def test_dd_matches_brute_force(extra):
    # intersect a box so the polytope is bounded and contains the origin
    box = [((1, 0, 0), 3), ((-1, 0, 0), 3), ((0, 1, 0), 3), ((0, -1, 0), 3), ((0, 0, 1), 3), ((0, 0, -1), 3)]
    ineqs = box + [((a, b, c), r) for a, b, c, r in extra if (a, b, c) != (0, 0, 0)]
    P = HPolytope(3, tuple(ineqs))
    got = [tuple(v) for v in vertices(P).vertices]
    want = brute_vertices(ineqs, 3)
    assert got == want


@settings(max_examples=60, deadline=None)
@given(rows3, st.integers(1, 3))
def test_lattice_points_match_box(extra, t):
    box = [((1, 0, 0), 2), ((-1, 0, 0), 2), ((0, 1, 0), 2), ((0, -1, 0), 2), ((0, 0, 1), 2), ((0, 0, -1), 2)]
    ineqs = box + [((a, b, c), r) for a, b, c, r in extra if (a, b, c) != (0, 0, 0)]
    P = dilate(HPolytope(3, tuple(ineqs)), t)
    want = box_points([(a, t * b) for a, b in ineqs], [], -2 * t, 2 * t, 3)
    assert lattice_points(P) == want


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), st.integers(-1, 3))
def test_lattice_points_with_equality(c, d):
    box = [((1, 0, 0), 2), ((-1, 0, 0), 2), ((0, 1, 0), 2), ((0, -1, 0), 2), ((0, 0, 1), 2), ((0, 0, -1), 2)]
    P = HPolytope(3, tuple(box), ((c, d),)) if c != (0, 0, 0) else HPolytope(3, tuple(box))
    eqs = [(c, d)] if c != (0, 0, 0) else []
    assert lattice_points(P) == box_points(box, eqs, -2, 2, 3)
