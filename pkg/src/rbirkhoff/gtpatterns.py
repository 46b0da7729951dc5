"""Gelfand-Tsetlin patterns, the monotone-matrix polytopes M_n^k and their counters."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import diagdp
from .birkhoff import Margins, Matrix, as_matrix, diagonal_sum
from .errors import CapExceeded, InfeasibleMargins, InputError
from .exactgeom import HPolytope, as_rat, count_lattice_points


@dataclass(frozen=True)
class GTPattern:
    """Triangular array; ``rows[i][j - i]`` holds g_{i+1, j+1} (0-based i <= j)."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_rat(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n - i for i, r in enumerate(rows)):
            raise InputError("GT pattern rows must have lengths n, n-1, ..., 1")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def g(self, i: int, j: int) -> Fraction:
        """1-based entry g_{i,j}, i <= j."""
        return self.rows[i - 1][j - i]

    @property
    def shape(self) -> tuple[Fraction, ...]:
        return tuple(r[0] for r in self.rows)

    def diagonal_sum(self, ell: int) -> Fraction:
        if ell >= self.n:
            return Fraction(0)
        return sum((self.g(i, i + ell) for i in range(1, self.n - ell + 1)), Fraction(0))

    @property
    def content(self) -> tuple[Fraction, ...]:
        d = [self.diagonal_sum(ell) for ell in range(self.n + 1)]
        return tuple(d[ell] - d[ell + 1] for ell in range(self.n - 1, -1, -1))

    def is_valid(self) -> bool:
        n = self.n
        for i in range(1, n + 1):
            for j in range(i, n):
                if not self.g(i, j) >= self.g(i, j + 1):
                    return False
                if i < n and not self.g(i, j + 1) >= self.g(i + 1, j + 1):
                    return False
        return True

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.rows for x in r)


def _gt_index(n: int, i: int, j: int) -> int:
    # row-major position of 1-based (i, j) in the flattened triangle
    return sum(n - r for r in range(i - 1)) + (j - i)


def build_GT(lam: Sequence[int], mu: Sequence[int]) -> HPolytope:
    """GT patterns of shape ``lam`` and content ``mu`` in flattened triangular coordinates."""
    lam, mu = list(lam), list(mu)
    n = max(len(lam), len(mu))
    lam += [0] * (n - len(lam))
    mu += [0] * (n - len(mu))
    if any(x < 0 for x in lam + mu):
        raise InputError("shape and content must be nonnegative")
    if sum(lam) != sum(mu):
        raise InputError(f"|lambda| = {sum(lam)} != |mu| = {sum(mu)}")
    N = n * (n + 1) // 2
    idx = lambda i, j: _gt_index(n, i, j)  # noqa: E731

    def vec(pairs):
        a = [0] * N
        for c, v in pairs:
            a[c] += v
        return a

    ineqs = []
    for i in range(1, n + 1):
        for j in range(i, n):
            ineqs.append((vec([(idx(i, j + 1), 1), (idx(i, j), -1)]), 0))
            if i < n:
                ineqs.append((vec([(idx(i + 1, j + 1), 1), (idx(i, j + 1), -1)]), 0))
    eqs = [(vec([(idx(i, i), 1)]), lam[i - 1]) for i in range(1, n + 1)]
    # d_ell = mu_1 + ... + mu_{n - ell}
    for ell in range(1, n):
        eqs.append((vec([(idx(i, i + ell), 1) for i in range(1, n - ell + 1)]), sum(mu[: n - ell])))
    return HPolytope(N, tuple(ineqs), tuple(eqs))


def gt_from_flat(v: Sequence, n: int) -> GTPattern:
    rows, pos = [], 0
    for i in range(n):
        rows.append(tuple(v[pos : pos + n - i]))
        pos += n - i
    return GTPattern(tuple(rows))


def build_M_transportation(margins: Margins, k: int, *, check_range: bool = True) -> HPolytope:
    """Monotone matrices with prescribed diagonal sums and ``y_{n,n} <= k`` (coordinates row-major)."""
    n = margins.n
    if check_range and not margins.r <= k <= margins.s:
        raise InputError(f"k={k} outside [{margins.r}, {margins.s}]")
    N = n * n
    at = lambda i, j: i * n + j  # noqa: E731

    def vec(pairs):
        a = [0] * N
        for c, v in pairs:
            a[c] += v
        return a

    ineqs = []
    for i in range(n):
        for j in range(n):
            if i + 1 < n:
                ineqs.append((vec([(at(i, j), 1), (at(i + 1, j), -1)]), 0))
            if j + 1 < n:
                ineqs.append((vec([(at(i, j), 1), (at(i, j + 1), -1)]), 0))
    ineqs.append((vec([(at(0, 0), -1)]), 0))
    ineqs.append((vec([(at(n - 1, n - 1), 1)]), k))
    eqs = []
    for ell in range(n - 1, -1, -1):
        eqs.append((vec([(at(i, i + ell), 1) for i in range(n - ell)]), sum(margins.alpha[: n - ell])))
    for m in range(1, n):
        eqs.append((vec([(at(i + m, i), 1) for i in range(n - m)]), sum(margins.beta[: n - m])))
    return HPolytope(N, tuple(ineqs), tuple(eqs))


def build_M(n: int, k: int) -> HPolytope:
    if not 1 <= k <= n:
        raise InputError(f"need 1 <= k <= n, got n={n}, k={k}")
    return build_M_transportation(Margins.ones(n), k)


def is_monotone(Y) -> bool:
    n = len(Y)
    return all(
        (i + 1 >= n or Y[i][j] <= Y[i + 1][j]) and (j + 1 >= n or Y[i][j] <= Y[i][j + 1])
        for i in range(n)
        for j in range(n)
    )


def gt_partner(margins: Margins, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shape and content of the GT polytope that ``embed_M_to_GT`` lands in.

    ``(k^n, 0^n)`` and ``(beta_1..beta_n, k - alpha_n, ..., k - alpha_1)``.
    """
    n = margins.n
    lam = (k,) * n + (0,) * n
    mu = tuple(margins.beta) + tuple(k - a for a in reversed(margins.alpha))
    return lam, mu


def embed_M_to_GT(Y, k: int) -> GTPattern:
    """Place the 180-degree rotation of ``Y`` between a triangle of k's and a triangle of 0's."""
    Y = as_matrix(Y)
    n = len(Y)
    if Y[n - 1][n - 1] > k:
        raise CapExceeded(f"y_nn = {Y[n - 1][n - 1]} exceeds k = {k}")
    rows = []
    for i in range(1, 2 * n + 1):
        row = []
        for j in range(i, 2 * n + 1):
            if j <= n:
                row.append(Fraction(k))
            elif i > n:
                row.append(Fraction(0))
            else:
                row.append(Y[n - i][2 * n - j])
        rows.append(tuple(row))
    return GTPattern(tuple(rows))


def gt_to_M(G: GTPattern) -> Matrix:
    """Inverse of :func:`embed_M_to_GT`: read the middle block back and un-rotate."""
    if G.n % 2:
        raise InputError("pattern size must be even")
    n = G.n // 2
    return tuple(tuple(G.g(n - a, 2 * n - b) for b in range(n)) for a in range(n))


def unimodular_map(Y) -> Matrix:
    """Keep the first row and column; elsewhere subtract the left neighbour on or below the
    diagonal and the upper neighbour above it."""
    Y = as_matrix(Y)
    n = len(Y)
    out = [list(r) for r in Y]
    for i in range(1, n):
        for j in range(1, n):
            out[i][j] = Y[i][j] - (Y[i][j - 1] if j <= i else Y[i - 1][j])
    return tuple(map(tuple, out))


def _chain_sums(parts: Sequence[int], t: int) -> list[int]:
    out, acc = [], 0
    for p in parts:
        acc += p
        out.append(t * acc)
    return out


def count_M_diagonal_DP(
    spec: Margins | tuple[int, int],
    t: int,
    *,
    k: int | None = None,
    max_states: int | None = None,
    backend: str = "auto",
) -> int:
    """``#(t M^k_{alpha,beta}  intersected with  Z^{n x n})`` by a transfer-matrix DP over diagonals.

    The upper and lower triangles are each a chain of interlacing weakly
    increasing diagonals; both chains are grown from their corner towards the
    main diagonal and joined there.

    ``spec`` is either ``(n, k)`` or a :class:`Margins` (then pass ``k=``).
    """
    if isinstance(spec, Margins):
        if k is None:
            raise InputError("k is required with margins")
        margins = spec
    else:
        n, k = spec
        if not 1 <= k <= n:
            raise InputError(f"need 1 <= k <= n, got n={n}, k={k}")
        margins = Margins.ones(n)
    if t < 0:
        raise InputError("t must be nonnegative")
    if sum(margins.alpha) != sum(margins.beta):
        raise InfeasibleMargins("margin totals differ")
    hi = t * k
    upper = diagdp.grow_chain(_chain_sums(margins.alpha, t), hi, max_states, backend)
    if margins.alpha == margins.beta:
        return sum(c * c for c in upper.values())
    lower = diagdp.grow_chain(_chain_sums(margins.beta, t), hi, max_states, backend)
    return sum(c * lower.get(D, 0) for D, c in upper.items())


def kostka(lam: Sequence[int], mu: Sequence[int], *, method: str = "dp", backend: str = "auto") -> int:
    """Number of SSYT of shape ``lam`` and content ``mu``.

    ``method="dp"`` grows the chain of restricted shapes with the interlacing
    kernel; ``method="enumerate"`` counts lattice points of :func:`build_GT`.
    """
    lam, mu = [int(x) for x in lam], [int(x) for x in mu]
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise InputError("shape must be weakly decreasing")
    if sum(lam) != sum(mu):
        raise InputError(f"|lambda| = {sum(lam)} != |mu| = {sum(mu)}")
    n = max(len(lam), len(mu))
    lam += [0] * (n - len(lam))
    mu += [0] * (n - len(mu))
    if method == "enumerate":
        return count_lattice_points(build_GT(lam, mu))
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    if any(x < 0 for x in mu):
        return 0
    if n == 0:
        return 1
    final = diagdp.grow_chain(_chain_sums(mu, 1), lam[0], None, backend)
    return final.get(tuple(reversed(lam)), 0)


def m_diagonal_sums_ok(Y, margins: Margins, t=1) -> bool:
    n = margins.n
    return all(diagonal_sum(Y, ell) == t * sum(margins.alpha[: n - ell]) for ell in range(n)) and all(
        diagonal_sum(Y, -m) == t * sum(margins.beta[: n - m]) for m in range(1, n)
    )
