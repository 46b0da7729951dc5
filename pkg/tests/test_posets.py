import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbirkhoff.birkhoff import build_restricted_birkhoff
from rbirkhoff.errors import InputError, NotInChainPolytope, NotInOrderPolytope, NotProductOfChains
from rbirkhoff.exactgeom import HPolytope, dilate, lattice_points, vertices
from rbirkhoff.posets import (
    Poset,
    chain_polytope,
    in_chain_polytope,
    in_order_polytope,
    matrix_to_function,
    order_polytope,
    orbit,
    product_of_chains,
    random_poset,
    rowmotion_chain,
    rowmotion_order,
    stanley_thomas_word,
    toggle,
    transfer,
    transfer_inverse,
)

F = Fraction

# w' = w rotated right by one: the new word at position i is the old word at i - 1
ST_SHIFT = 1


def rotate(w, s=ST_SHIFT):
    return tuple(w[(i - s) % len(w)] for i in range(len(w)))


def random_order_point(P, rng, den=6):
    g = [F(rng.randint(0, den), den) for _ in range(P.size)]
    h = transfer_inverse_unchecked(P, g)
    top = max(h, default=F(0))
    return tuple(x / top for x in h) if top > 1 else h


def transfer_inverse_unchecked(P, g):
    h = [F(0)] * P.size
    for p in P.linear_extension:
        h[p] = g[p] + max((h[q] for q in P.lower_covers[p]), default=F(0))
    return tuple(h)


def test_product_of_chains():
    P = product_of_chains(2, 2)
    assert P.size == 4 and len(P.covers) == 4
    assert product_of_chains(1, 1).size == 1
    for n in range(1, 5):
        assert len(product_of_chains(n, n).maximal_chains()) == comb(2 * n - 2, n - 1)


def test_poset_validation():
    with pytest.raises(InputError):
        Poset(2, frozenset({(0, 1), (1, 0)}))
    with pytest.raises(InputError):
        Poset(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    P = Poset.from_relations(3, [(0, 1), (1, 2), (0, 2)])
    assert P.covers == {(0, 1), (1, 2)}
    assert P.less(0, 2) and P.comparable(0, 0) and not P.less(2, 0)


def test_vertices_are_indicators():
    P = product_of_chains(2, 2)
    antichains = {tuple(F(int(p in a)) for p in range(4)) for a in P.antichains()}
    filters = {tuple(F(int(p in f)) for p in range(4)) for f in P.order_filters()}
    assert len(antichains) == 6 and len(filters) == 6
    assert set(vertices(chain_polytope(P)).vertices) == antichains
    assert set(vertices(order_polytope(P)).vertices) == filters


def test_birkhoff_is_scaled_chain_polytope_slice():
    n, k = 3, 2
    C = chain_polytope(product_of_chains(n, n))
    B = build_restricted_birkhoff((n, k))
    scaled = HPolytope(n * n, tuple((a, k * b) for a, b in C.inequalities), B.equalities)
    for t in (1, 2, 3):
        assert lattice_points(dilate(scaled, t)) == lattice_points(dilate(B, t))


def test_transfer_examples():
    P = product_of_chains(2, 2)
    f = matrix_to_function([[0, 1], [1, 1]])
    assert transfer(P, f) == (0, 1, 1, 0)
    assert transfer(P, (0,) * 4) == (0,) * 4
    with pytest.raises(NotInOrderPolytope):
        transfer(P, (1, 0, 0, 0))
    with pytest.raises(NotInChainPolytope):
        transfer_inverse(P, (1, 1, 0, 0))
    for a in P.antichains():
        g = tuple(F(int(p in a)) for p in range(4))
        up = P.upward_closure(a)
        assert transfer_inverse(P, g) == tuple(F(int(p in up)) for p in range(4))


def test_transfer_2x2_closed_form():
    rng = random.Random(5)
    P = product_of_chains(2, 2)
    for _ in range(50):
        g = [F(rng.randint(0, 3), 12) for _ in range(4)]
        x11, x12, x21, x22 = g
        assert transfer_inverse(P, g) == (x11, x11 + x12, x11 + x21, x11 + x22 + max(x12, x21))


def test_transfer_fails_on_B22():
    a = F(1, 4)
    P = product_of_chains(2, 2)
    # B_2^2 sits in 2 C(P); the map is positively homogeneous
    X = (a, 1 - a, 1 - a, a)
    Y = tuple(2 * y for y in transfer_inverse(P, tuple(x / 2 for x in X)))
    # main-diagonal sum of M_2^2 must be 2
    assert Y[0] + Y[3] == 1 + 2 * a != 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.floats(0.1, 0.9), st.randoms(use_true_random=False))
def test_transfer_roundtrip(m, density, rnd):
    P = random_poset(m, density, rnd)
    f = random_order_point(P, rnd)
    assert in_order_polytope(P, f)
    g = transfer(P, f)
    assert in_chain_polytope(P, g)
    assert transfer_inverse(P, g) == f


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.floats(0.1, 0.9), st.randoms(use_true_random=False))
def test_toggles_commute_on_incomparable(m, density, rnd):
    P = random_poset(m, density, rnd)
    f = random_order_point(P, rnd)
    pairs = [(p, q) for p in range(m) for q in range(p + 1, m) if not P.comparable(p, q)]
    for p, q in pairs[:5]:
        assert toggle(P, toggle(P, f, p), q) == toggle(P, toggle(P, f, q), p)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.floats(0.1, 0.9), st.randoms(use_true_random=False))
def test_rowmotion_independent_of_extension(m, density, rnd):
    P = random_poset(m, density, rnd)
    f = random_order_point(P, rnd)
    ext = P.other_linear_extension(rnd)
    assert rowmotion_order(P, f) == rowmotion_order(P, f, ext)


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 3), (1, 4), (3, 4)])
def test_rowmotion_order_product_of_chains(n, m):
    rng = random.Random(n * 10 + m)
    P = product_of_chains(n, m)
    for _ in range(10):
        f = random_order_point(P, rng)
        o = orbit(lambda x: rowmotion_order(P, x), f)
        assert (n + m) % len(o) == 0


def test_st_word_examples():
    P = product_of_chains(2, 2)
    assert stanley_thomas_word(P, (0, 1, 0, 0)) == (1, 0, 1, 0)
    assert stanley_thomas_word(P, (0,) * 4) == (0, 0, 1, 1)
    with pytest.raises(NotProductOfChains):
        stanley_thomas_word(Poset.from_relations(2, []), (0, 0))


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (3, 3), (1, 4)])
def test_st_word_rotates(n, m):
    rng = random.Random(7 * n + m)
    P = product_of_chains(n, m)
    for _ in range(20):
        g = [F(rng.randint(0, 6), 6) for _ in range(n * m)]
        f = transfer_inverse_unchecked(P, g)
        top = max(f)
        if top > 1:
            g = [x / top for x in g]
        w = stanley_thomas_word(P, g)
        assert stanley_thomas_word(P, rowmotion_chain(P, g)) == rotate(w)


@pytest.mark.parametrize("n", [2, 3])
def test_half_birkhoff_preserved(n):
    P = product_of_chains(n, n)
    B = build_restricted_birkhoff((n, 2))
    half = tuple(F(1, 2) for _ in range(2 * n))
    for t in (1, 2, 3):
        pts = {tuple(F(x, 2 * t) for x in X) for X in lattice_points(dilate(B, t))}
        for g in pts:
            h = rowmotion_chain(P, g)
            assert h in pts
            assert stanley_thomas_word(P, g) == half
        for g in list(pts)[:20]:
            assert (2 * n) % len(orbit(lambda x: rowmotion_chain(P, x), g)) == 0
