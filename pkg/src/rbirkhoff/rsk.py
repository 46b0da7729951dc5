"""RSK on nonnegative matrices and its homogeneous extension to rational matrices.

Integer matrices go through classical row-insertion RSK; the output pair of
tableaux is read as two Gelfand-Tsetlin patterns and glued along the main
diagonal into a matrix that weakly increases along rows and columns.
Rational inputs are scaled to integers first and the result scaled back;
the scale-consistency tests are what make that well defined.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import NamedTuple, Sequence

from .birkhoff import Matrix, as_matrix
from .errors import NegativeEntry, NonIntegerInput, NotAValidGluing, NotInCone, ShapeMismatch
from .exactgeom import lcm_denominators
from .gtpatterns import GTPattern, is_monotone

Tableau = tuple[tuple[int, ...], ...]


class TableauPair(NamedTuple):
    P: Tableau
    Q: Tableau


def shape(T: Tableau) -> tuple[int, ...]:
    return tuple(len(r) for r in T)


def is_semistandard(T: Tableau) -> bool:
    for r, row in enumerate(T):
        if any(row[c] > row[c + 1] for c in range(len(row) - 1)):
            return False
        if r and (len(row) > len(T[r - 1]) or any(T[r - 1][c] >= row[c] for c in range(len(row)))):
            return False
    return True


def content(T: Tableau, n: int) -> tuple[int, ...]:
    counts = [0] * n
    for row in T:
        for x in row:
            counts[x - 1] += 1
    return tuple(counts)


def biword(X) -> list[tuple[int, int]]:
    """Lexicographically sorted pairs (i, j), 1-based, with multiplicity x_{i,j}."""
    return [(i + 1, j + 1) for i, row in enumerate(X) for j, x in enumerate(row) for _ in range(int(x))]


def _integer_matrix(X) -> list[list[int]]:
    out = []
    for row in X:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise NonIntegerInput(f"entry {x} is not an integer")
            if x < 0:
                raise NegativeEntry(f"entry {x} is negative")
            r.append(int(x))
        out.append(r)
    if any(len(r) != len(out) for r in out):
        raise ShapeMismatch("matrix must be square")
    return out


def rsk_forward(X) -> TableauPair:
    """Row-insertion RSK of the biword of a nonnegative integer matrix."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for i, j in biword(_integer_matrix(X)):
        x = j
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([i])
                break
            row = P[r]
            c = bisect_right(row, x)
            if c == len(row):
                row.append(x)
                Q[r].append(i)
                break
            row[c], x = x, row[c]
            r += 1
    return TableauPair(tuple(map(tuple, P)), tuple(map(tuple, Q)))


def rsk_inverse(pq: TableauPair, n: int | None = None) -> tuple[tuple[int, ...], ...]:
    P = [list(r) for r in pq.P]
    Q = [list(r) for r in pq.Q]
    if shape(pq.P) != shape(pq.Q):
        raise ShapeMismatch(f"P has shape {shape(pq.P)}, Q has shape {shape(pq.Q)}")
    if not (is_semistandard(pq.P) and is_semistandard(pq.Q)):
        raise ShapeMismatch("tableaux must be semistandard")
    top = max((x for T in (pq.P, pq.Q) for r in T for x in r), default=0)
    n = top if n is None else n
    if top > n:
        raise ShapeMismatch(f"entry {top} exceeds n = {n}")
    X = [[0] * n for _ in range(n)]
    while Q:
        # the largest recording entry, rightmost among ties, was added last
        i = max(r[-1] for r in Q)
        r = min(idx for idx, row in enumerate(Q) if row[-1] == i)
        Q[r].pop()
        x = P[r].pop()
        if not Q[r]:
            Q.pop()
            P.pop()
        for rr in range(r - 1, -1, -1):
            row = P[rr]
            c = bisect_left(row, x) - 1
            row[c], x = x, row[c]
        X[i - 1][x - 1] += 1
    return tuple(map(tuple, X))


def _restricted_shapes(T: Tableau, n: int) -> list[list[int]]:
    """``shapes[a]`` = shape of the entries <= a, padded with zeros to length n."""
    out = []
    for a in range(n + 1):
        lam = [bisect_right(row, a) for row in T]
        out.append(lam + [0] * (n - len(lam)))
    return out


def tableau_to_gt(T: Tableau, n: int) -> GTPattern:
    if any(x > n for r in T for x in r):
        raise ShapeMismatch(f"tableau has an entry larger than {n}")
    if len(T) > n:
        raise ShapeMismatch(f"tableau has more than {n} rows")
    lam = _restricted_shapes(T, n)
    # g_{i,j} = lambda^{(n - j + i)}_i
    return GTPattern(tuple(tuple(lam[n - j + i][i - 1] for j in range(i, n + 1)) for i in range(1, n + 1)))


def glue(pq: TableauPair, n: int) -> tuple[tuple[int, ...], ...]:
    """Glue the GT patterns of Q (upper triangle) and P (lower triangle) along the main diagonal."""
    if shape(pq.P) != shape(pq.Q):
        raise ShapeMismatch(f"P has shape {shape(pq.P)}, Q has shape {shape(pq.Q)}")
    if len(pq.P) > n or any(x > n for T in pq for r in T for x in r):
        raise ShapeMismatch(f"tableaux do not fit n = {n}")
    lq = _restricted_shapes(pq.Q, n)
    lp = _restricted_shapes(pq.P, n)
    Y = [[0] * n for _ in range(n)]
    for ell in range(n):
        a = n - ell
        for i in range(1, a + 1):
            Y[i - 1][i + ell - 1] = lq[a][a - i]
            if ell:
                Y[i + ell - 1][i - 1] = lp[a][a - i]
    return tuple(map(tuple, Y))


def _chain_to_tableau(shapes: list[list[int]]) -> Tableau:
    n = len(shapes) - 1
    rows = []
    for r in range(n):
        row = []
        for a in range(1, n + 1):
            row += [a] * (shapes[a][r] - shapes[a - 1][r])
        if row:
            rows.append(tuple(row))
    return tuple(rows)


def unglue(Y) -> TableauPair:
    """Inverse of :func:`glue` on integer monotone matrices."""
    Y = _integer_matrix_any_sign(Y)
    n = len(Y)
    sides = []
    for upper in (True, False):
        shapes = [[0] * n]
        for a in range(1, n + 1):
            ell = n - a
            lam = []
            for r in range(1, a + 1):
                i = a - r + 1
                lam.append(Y[i - 1][i + ell - 1] if upper else Y[i + ell - 1][i - 1])
            shapes.append(lam + [0] * (n - a))
        for a in range(1, n + 1):
            cur, prev = shapes[a], shapes[a - 1]
            for r in range(n):
                nxt = cur[r + 1] if r + 1 < n else 0
                if not (cur[r] >= prev[r] >= nxt) or cur[r] < 0:
                    raise NotAValidGluing(f"diagonal {n - a} does not interlace with diagonal {n - a + 1}")
        sides.append(_chain_to_tableau(shapes))
    Q, P = sides
    return TableauPair(P, Q)


def _integer_matrix_any_sign(Y) -> list[list[int]]:
    out = []
    for row in Y:
        r = []
        for y in row:
            y = Fraction(y)
            if y.denominator != 1:
                raise NonIntegerInput(f"entry {y} is not an integer")
            r.append(int(y))
        out.append(r)
    return out


def rho(X) -> Matrix:
    """Piecewise-linear RSK: ``(1/m) glue(RSK(m X))`` with m the common denominator."""
    X = as_matrix(X)
    n = len(X)
    if any(x < 0 for row in X for x in row):
        raise NegativeEntry("rho is defined on nonnegative matrices")
    m = lcm_denominators(x for row in X for x in row)
    Y = glue(rsk_forward([[int(x * m) for x in row] for row in X]), n)
    return tuple(tuple(Fraction(y, m) for y in row) for row in Y)


def in_cone(Y) -> bool:
    return len(Y) > 0 and Y[0][0] >= 0 and is_monotone(Y)


def rho_inverse(Y) -> Matrix:
    Y = as_matrix(Y)
    n = len(Y)
    if not in_cone(Y):
        raise NotInCone("matrix must be nonnegative and weakly increasing along rows and columns")
    m = lcm_denominators(y for row in Y for y in row)
    X = rsk_inverse(unglue([[int(y * m) for y in row] for row in Y]), n)
    return tuple(tuple(Fraction(x, m) for x in row) for row in X)


def rho_2x2(X: Sequence[Sequence]) -> Matrix:
    """Closed form of rho for 2 x 2 matrices."""
    (a, b), (c, d) = as_matrix(X)
    return ((min(b, c), a + b), (a + c, a + d + max(b, c)))
