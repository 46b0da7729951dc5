"""Finite posets, order and chain polytopes, the transfer map and piecewise-linear rowmotion.

Elements are ``0..m-1``. A poset function is a tuple of rationals indexed by
element. For ``[n] x [m]`` the element ``(i, j)`` (1-based) is stored at
``(i - 1) * m + (j - 1)``, so a function reads as an n x m matrix row-major,
which is the layout used for Birkhoff matrices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InputError, NotInChainPolytope, NotInOrderPolytope, NotInPolytope, NotProductOfChains
from .exactgeom import HPolytope, as_rat

PosetFunction = tuple[Fraction, ...]


@dataclass(frozen=True)
class Poset:
    size: int
    covers: frozenset[tuple[int, int]]
    grid: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        for p, q in self.covers:
            if not (0 <= p < self.size and 0 <= q < self.size) or p == q:
                raise InputError(f"bad cover ({p}, {q})")
        order = self._topological()
        if order is None:
            raise InputError("cover relation has a cycle")
        # covers must be transitively irredundant
        for p, q in self.covers:
            if any(r != q and q in self.up_closure[r] for r in self.upper_covers[p]):
                raise InputError(f"({p}, {q}) is implied by other covers")

    @classmethod
    def from_relations(cls, size: int, relations) -> "Poset":
        """Poset generated by ``p < q`` pairs; the transitive reduction is taken."""
        rel = {(int(p), int(q)) for p, q in relations}
        above = {p: {q for a, q in rel if a == p} for p in range(size)}
        closure: dict[int, set[int]] = {}

        def up(p, stack=()):
            if p in stack:
                raise InputError("relations contain a cycle")
            if p not in closure:
                s = set()
                for q in above[p]:
                    s.add(q)
                    s |= up(q, stack + (p,))
                closure[p] = s
            return closure[p]

        for p in range(size):
            up(p)
        covers = {
            (p, q) for p in range(size) for q in closure[p] if not any(q in closure[r] for r in closure[p])
        }
        return cls(size, frozenset(covers))

    def _topological(self) -> list[int] | None:
        indeg = [0] * self.size
        for _, q in self.covers:
            indeg[q] += 1
        ready = sorted(p for p in range(self.size) if indeg[p] == 0)
        out = []
        while ready:
            p = ready.pop(0)
            out.append(p)
            for q in sorted(self.upper_covers[p]):
                indeg[q] -= 1
                if indeg[q] == 0:
                    ready.append(q)
            ready.sort()
        return out if len(out) == self.size else None

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(q for a, q in self.covers if a == p)) for p in range(self.size))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(a for a, q in self.covers if q == p)) for p in range(self.size))

    @cached_property
    def up_closure(self) -> tuple[frozenset[int], ...]:
        """Strict upper sets."""
        out: list[frozenset[int]] = [frozenset()] * self.size
        for p in reversed(self.linear_extension):
            s = set(self.upper_covers[p])
            for q in self.upper_covers[p]:
                s |= out[q]
            out[p] = frozenset(s)
        return tuple(out)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(self._topological())

    def less(self, p: int, q: int) -> bool:
        return q in self.up_closure[p]

    def comparable(self, p: int, q: int) -> bool:
        return p == q or self.less(p, q) or self.less(q, p)

    @property
    def minimal(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.size) if not self.lower_covers[p])

    @property
    def maximal(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.size) if not self.upper_covers[p])

    def maximal_chains(self) -> list[tuple[int, ...]]:
        out = []

        def walk(chain):
            ups = self.upper_covers[chain[-1]]
            if not ups:
                out.append(tuple(chain))
            for q in ups:
                walk(chain + [q])

        for p in self.minimal:
            walk([p])
        return sorted(out)

    def antichains(self) -> list[frozenset[int]]:
        out = [frozenset()]
        for p in range(self.size):
            out += [a | {p} for a in out if all(not self.comparable(p, q) for q in a)]
        return sorted(out, key=lambda a: (len(a), sorted(a)))

    def upward_closure(self, A) -> frozenset[int]:
        s = set(A)
        for p in A:
            s |= self.up_closure[p]
        return frozenset(s)

    def order_filters(self) -> list[frozenset[int]]:
        return sorted({self.upward_closure(a) for a in self.antichains()}, key=lambda f: (len(f), sorted(f)))

    def other_linear_extension(self, rng: random.Random) -> tuple[int, ...]:
        """A uniformly-ish random linear extension (random choice among ready elements)."""
        indeg = [len(self.lower_covers[p]) for p in range(self.size)]
        ready = [p for p in range(self.size) if indeg[p] == 0]
        out = []
        while ready:
            p = ready.pop(rng.randrange(len(ready)))
            out.append(p)
            for q in self.upper_covers[p]:
                indeg[q] -= 1
                if indeg[q] == 0:
                    ready.append(q)
        return tuple(out)


def product_of_chains(n: int, m: int) -> Poset:
    if n < 1 or m < 1:
        raise InputError("chain lengths must be positive")
    covers = set()
    for i in range(n):
        for j in range(m):
            if i + 1 < n:
                covers.add((i * m + j, (i + 1) * m + j))
            if j + 1 < m:
                covers.add((i * m + j, i * m + j + 1))
    return Poset(n * m, frozenset(covers), (n, m))


def random_poset(size: int, density: float, rng: random.Random) -> Poset:
    """Random poset: relations ``perm[a] < perm[b]`` for ``a < b`` with probability ``density``."""
    perm = list(range(size))
    rng.shuffle(perm)
    rel = [(perm[a], perm[b]) for a in range(size) for b in range(a + 1, size) if rng.random() < density]
    return Poset.from_relations(size, rel)


def _unit(N: int, pairs) -> list[int]:
    a = [0] * N
    for c, v in pairs:
        a[c] += v
    return a


def order_polytope(P: Poset) -> HPolytope:
    """``0 <= f <= 1`` and ``f(p) <= f(q)`` along covers."""
    N = P.size
    ineqs = [(_unit(N, [(p, 1), (q, -1)]), 0) for p, q in sorted(P.covers)]
    ineqs += [(_unit(N, [(p, -1)]), 0) for p in P.minimal]
    ineqs += [(_unit(N, [(p, 1)]), 1) for p in P.maximal]
    return HPolytope(N, tuple(ineqs), ())


def chain_polytope(P: Poset) -> HPolytope:
    """``g >= 0`` and the sum along every maximal chain at most 1."""
    N = P.size
    ineqs = [(_unit(N, [(p, -1)]), 0) for p in range(N)]
    ineqs += [(_unit(N, [(p, 1) for p in c]), 1) for c in P.maximal_chains()]
    return HPolytope(N, tuple(ineqs), ())


def _as_function(P: Poset, f) -> PosetFunction:
    f = tuple(as_rat(x) for x in f)
    if len(f) != P.size:
        raise InputError(f"function has {len(f)} values, poset has {P.size} elements")
    return f


def in_order_polytope(P: Poset, f) -> bool:
    f = _as_function(P, f)
    return all(0 <= x <= 1 for x in f) and all(f[p] <= f[q] for p, q in P.covers)


def max_chain_sums(P: Poset, g) -> PosetFunction:
    """Largest sum of g over a chain ending at each element."""
    h = [Fraction(0)] * P.size
    for p in P.linear_extension:
        h[p] = g[p] + max((h[q] for q in P.lower_covers[p]), default=Fraction(0))
    return tuple(h)


def in_chain_polytope(P: Poset, g) -> bool:
    g = _as_function(P, g)
    return all(x >= 0 for x in g) and all(x <= 1 for x in max_chain_sums(P, g))


def transfer(P: Poset, f) -> PosetFunction:
    """Order polytope to chain polytope: subtract the largest value among lower covers."""
    f = _as_function(P, f)
    if not in_order_polytope(P, f):
        raise NotInOrderPolytope("function is not in the order polytope")
    return tuple(f[p] - max((f[q] for q in P.lower_covers[p]), default=Fraction(0)) for p in range(P.size))


def transfer_inverse(P: Poset, g) -> PosetFunction:
    """Chain polytope to order polytope: largest chain sum ending at each element."""
    g = _as_function(P, g)
    if not in_chain_polytope(P, g):
        raise NotInChainPolytope("function is not in the chain polytope")
    return max_chain_sums(P, g)


def toggle(P: Poset, f: Sequence[Fraction], p: int) -> PosetFunction:
    f = list(f)
    hi = min((f[q] for q in P.upper_covers[p]), default=Fraction(1))
    lo = max((f[q] for q in P.lower_covers[p]), default=Fraction(0))
    f[p] = hi + lo - f[p]
    return tuple(f)


def rowmotion_order(P: Poset, f, extension: Sequence[int] | None = None) -> PosetFunction:
    """Toggle every element, from the top of a linear extension down."""
    f = _as_function(P, f)
    if not in_order_polytope(P, f):
        raise NotInOrderPolytope("function is not in the order polytope")
    for p in reversed(P.linear_extension if extension is None else extension):
        f = toggle(P, f, p)
    return f


def rowmotion_chain(P: Poset, g) -> PosetFunction:
    return transfer(P, rowmotion_order(P, transfer_inverse(P, g)))


def orbit(step, x, max_len: int = 10_000) -> list:
    """``[x, step(x), ...]`` up to (not including) the first return to x."""
    out = [x]
    y = step(x)
    while y != x:
        out.append(y)
        if len(out) > max_len:
            raise InputError(f"orbit longer than {max_len}")
        y = step(y)
    return out


def stanley_thomas_word(P: Poset, g) -> PosetFunction:
    """Row sums of g followed by one minus the column sums, for ``P = [n] x [m]``."""
    if P.grid is None:
        raise NotProductOfChains("the Stanley-Thomas word needs a product of two chains")
    g = _as_function(P, g)
    if not in_chain_polytope(P, g):
        raise NotInChainPolytope("function is not in the chain polytope")
    n, m = P.grid
    rows = [sum(g[i * m : (i + 1) * m], Fraction(0)) for i in range(n)]
    cols = [1 - sum((g[i * m + j] for i in range(n)), Fraction(0)) for j in range(m)]
    return tuple(rows + cols)


def matrix_to_function(X) -> PosetFunction:
    return tuple(as_rat(x) for row in X for x in row)


def function_to_matrix(P: Poset, f) -> tuple[tuple[Fraction, ...], ...]:
    if P.grid is None:
        raise NotProductOfChains("not a product of two chains")
    n, m = P.grid
    return tuple(tuple(f[i * m : (i + 1) * m]) for i in range(n))


def check_in(P: Poset, g, polytope: str = "C") -> None:
    ok = in_chain_polytope(P, g) if polytope == "C" else in_order_polytope(P, g)
    if not ok:
        raise NotInPolytope(f"point is not in the {'chain' if polytope == 'C' else 'order'} polytope")
