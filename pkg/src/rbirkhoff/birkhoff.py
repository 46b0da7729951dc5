"""Restricted Birkhoff and transportation polytopes.

Matrices are row-major tuples of tuples; the flattened coordinate of cell
``(i, j)`` (0-based) is ``i * n + j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import BudgetExceeded, InfeasibleMargins, InputError
from .exactgeom import HPolytope, as_rat

Matrix = tuple[tuple[Fraction, ...], ...]
Cell = tuple[int, int]


@dataclass(frozen=True)
class Margins:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if len(self.alpha) != len(self.beta):
            raise InfeasibleMargins("row and column margins have different lengths")
        if min(self.alpha + self.beta, default=0) < 0:
            raise InfeasibleMargins("margins must be nonnegative")
        if sum(self.alpha) != sum(self.beta):
            raise InfeasibleMargins(f"row total {sum(self.alpha)} != column total {sum(self.beta)}")

    @classmethod
    def ones(cls, n: int) -> "Margins":
        return cls((1,) * n, (1,) * n)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def r(self) -> int:
        return max(self.alpha + self.beta, default=0)

    @property
    def s(self) -> int:
        return sum(self.alpha)


@dataclass(frozen=True)
class BirkhoffSpec:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.k <= self.n:
            raise InputError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(as_rat(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise InputError("matrix must be square")
    return m


def flatten(X: Sequence[Sequence]) -> tuple:
    return tuple(x for row in X for x in row)


def unflatten(v: Sequence, n: int) -> Matrix:
    return tuple(tuple(as_rat(x) for x in v[i * n : (i + 1) * n]) for i in range(n))


def permutation_matrix(w: Sequence[int]) -> Matrix:
    """Matrix with a 1 in cell (i, w[i]) (0-based one-line notation)."""
    n = len(w)
    return tuple(tuple(Fraction(int(w[i] == j)) for j in range(n)) for i in range(n))


def monotone_paths(n: int) -> list[tuple[Cell, ...]]:
    """All right/down lattice paths from (1, 1) to (n, n), 1-based cells, lexicographic."""
    if n < 1:
        raise InputError("n must be positive")
    paths = []
    for downs in combinations(range(2 * n - 2), n - 1):
        i = j = 1
        cells = [(1, 1)]
        down = set(downs)
        for step in range(2 * n - 2):
            if step in down:
                i += 1
            else:
                j += 1
            cells.append((i, j))
        paths.append(tuple(cells))
    paths.sort()
    assert len(paths) == comb(2 * n - 2, n - 1)
    return paths


def _chain_rows(n: int, k) -> list:
    rows = []
    for path in monotone_paths(n):
        a = [0] * (n * n)
        for i, j in path:
            a[(i - 1) * n + (j - 1)] = 1
        rows.append((a, k))
    return rows


def build_transportation(margins: Margins, k: int, *, check_range: bool = True) -> HPolytope:
    """Contingency tables with the given margins and every monotone chain sum at most ``k``."""
    n = margins.n
    if check_range and not margins.r <= k <= margins.s:
        raise InputError(f"k={k} outside [{margins.r}, {margins.s}]")
    N = n * n
    ineqs = []
    for c in range(N):
        a = [0] * N
        a[c] = -1
        ineqs.append((a, 0))
    ineqs += _chain_rows(n, k)
    eqs = []
    for i in range(n):
        a = [0] * N
        for j in range(n):
            a[i * n + j] = 1
        eqs.append((a, margins.alpha[i]))
    for j in range(n):
        a = [0] * N
        for i in range(n):
            a[i * n + j] = 1
        eqs.append((a, margins.beta[j]))
    return HPolytope(N, tuple(ineqs), tuple(eqs))


def build_restricted_birkhoff(spec: BirkhoffSpec | tuple[int, int]) -> HPolytope:
    if not isinstance(spec, BirkhoffSpec):
        spec = BirkhoffSpec(*spec)
    return build_transportation(Margins.ones(spec.n), spec.k)


def max_chain_sum(X: Sequence[Sequence]):
    """Largest sum of entries along a monotone (1,1) -> (n,n) path."""
    n = len(X)
    if n == 0:
        return Fraction(0)
    best = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            prev = [best[a][b] for a, b in ((i - 1, j), (i, j - 1)) if a >= 0 and b >= 0]
            best[i][j] = as_rat(X[i][j]) + (max(prev) if prev else 0)
    return best[n - 1][n - 1]


def _dfs_count(alpha: Sequence[int], beta: Sequence[int], cap: int, max_nodes: int | None) -> int:
    n = len(alpha)
    rowrem = list(alpha)
    colrem = list(beta)
    best = [[0] * n for _ in range(n)]
    nodes = 0

    def rec(cell: int) -> int:
        nonlocal nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise BudgetExceeded(f"direct count exceeded {max_nodes} nodes")
        if cell == n * n:
            return 1
        i, j = divmod(cell, n)
        before = max(best[i - 1][j] if i else 0, best[i][j - 1] if j else 0)
        if j == n - 1:
            lo = hi = rowrem[i]
            if hi > colrem[j]:
                return 0
        elif i == n - 1:
            lo = hi = colrem[j]
            if hi > rowrem[i]:
                return 0
        else:
            lo, hi = 0, min(rowrem[i], colrem[j], cap - before)
        total = 0
        for v in range(lo, hi + 1):
            chain = before + v
            rowrem[i] -= v
            colrem[j] -= v
            # every chain through (i, j) can be finished along row i or down column j
            if chain + max(rowrem[i], colrem[j]) <= cap:
                best[i][j] = chain
                total += rec(cell + 1)
            rowrem[i] += v
            colrem[j] += v
        return total

    return rec(0)


def count_lattice_points_direct(
    spec: BirkhoffSpec | Margins,
    t: int,
    *,
    k: int | None = None,
    max_nodes: int | None = 5_000_000,
) -> int:
    """``#(t B_n^k  intersected with  Z^{n x n})`` by depth-first search over cells.

    ``spec`` may also be a :class:`Margins`, in which case ``k`` is required
    and the transportation polytope is counted.
    """
    if t < 0:
        raise InputError("t must be nonnegative")
    if isinstance(spec, Margins):
        if k is None:
            raise InputError("k is required with margins")
        alpha, beta, cap = spec.alpha, spec.beta, k
    else:
        if not isinstance(spec, BirkhoffSpec):
            spec = BirkhoffSpec(*spec)
        alpha = beta = (1,) * spec.n
        cap = spec.k
    return _dfs_count([t * a for a in alpha], [t * b for b in beta], t * cap, max_nodes)


def cyclic_shift_vertex(n: int) -> Matrix:
    """The (2n+1) x (2n+1) matrix with 2n/(2n+1) on the diagonal and 1/(2n+1) at (i, i+n mod 2n+1)."""
    if n < 2:
        raise InputError("n must be at least 2")
    N = 2 * n + 1
    X = [[Fraction(0)] * N for _ in range(N)]
    for i in range(N):
        X[i][i] = Fraction(2 * n, N)
        X[i][(i + n) % N] = Fraction(1, N)
    return tuple(map(tuple, X))


def row_sums(X) -> tuple:
    return tuple(sum(row, Fraction(0)) for row in X)


def col_sums(X) -> tuple:
    n = len(X)
    return tuple(sum((X[i][j] for i in range(n)), Fraction(0)) for j in range(n))


def diagonal_sum(Y, ell: int):
    """Sum of the entries on the diagonal ``j - i == ell``."""
    n = len(Y)
    return sum((as_rat(Y[i][i + ell]) for i in range(n) if 0 <= i + ell < n), Fraction(0))


def diag_sums(Y) -> dict[int, Fraction]:
    n = len(Y)
    return {ell: diagonal_sum(Y, ell) for ell in range(-(n - 1), n)}
