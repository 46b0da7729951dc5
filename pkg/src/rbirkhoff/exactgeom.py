"""Exact rational polytopes.

H-polytopes are stored as ``a . x <= b`` and ``c . x == d`` rows over
:class:`fractions.Fraction`.  Everything here is exact: vertices come from a
double-description run on an integer-scaled homogenisation, lattice points
from a depth-first search with interval-propagated bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    EmptyPolytope,
    NotInPolytope,
    UnboundedPolytope,
    ZeroDimensional,
)

RatVector = tuple[Fraction, ...]
Row = tuple[RatVector, Fraction]


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def as_vector(xs: Iterable) -> RatVector:
    return tuple(as_rat(x) for x in xs)


def fmt_rat(x) -> str:
    x = as_rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lcm_denominators(xs: Iterable) -> int:
    return reduce(math.lcm, (as_rat(x).denominator for x in xs), 1)


def _dot(a: Sequence, x: Sequence):
    return sum((ai * xi for ai, xi in zip(a, x) if ai), Fraction(0))


@dataclass(frozen=True)
class HPolytope:
    """``{x : A x <= b, C x == d}`` with rational data."""

    ambient_dim: int
    inequalities: tuple[Row, ...] = ()
    equalities: tuple[Row, ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")
        for name in ("inequalities", "equalities"):
            rows = tuple((as_vector(a), as_rat(b)) for a, b in getattr(self, name))
            for a, _ in rows:
                if len(a) != self.ambient_dim:
                    raise ValueError(f"constraint of length {len(a)} in dimension {self.ambient_dim}")
            object.__setattr__(self, name, rows)

    def contains(self, x: Sequence) -> bool:
        x = as_vector(x)
        if len(x) != self.ambient_dim:
            return False
        return all(_dot(a, x) <= b for a, b in self.inequalities) and all(
            _dot(c, x) == d for c, d in self.equalities
        )

    def tight_inequalities(self, x: Sequence) -> list[int]:
        x = as_vector(x)
        return [i for i, (a, b) in enumerate(self.inequalities) if _dot(a, x) == b]


@dataclass(frozen=True)
class VRep:
    ambient_dim: int
    vertices: tuple[RatVector, ...]

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def dilate(P: HPolytope, t: int) -> HPolytope:
    if t < 1:
        raise ValueError("dilation factor must be a positive integer")
    return HPolytope(
        P.ambient_dim,
        tuple((a, t * b) for a, b in P.inequalities),
        tuple((c, t * d) for c, d in P.equalities),
    )


# ---------------------------------------------------------------------------
# exact linear algebra


def _int_rank(rows: Iterable[Sequence[int]], stop_at: int | None = None) -> int:
    pivots: list[tuple[int, list[int]]] = []
    for row in rows:
        v = list(row)
        for col, prow in pivots:
            if v[col]:
                a, b = prow[col], v[col]
                v = [a * x - b * y for x, y in zip(v, prow)]
                g = reduce(math.gcd, v, 0)
                if g > 1:
                    v = [x // g for x in v]
        col = next((c for c, x in enumerate(v) if x), None)
        if col is not None:
            pivots.append((col, v))
            if stop_at is not None and len(pivots) >= stop_at:
                break
    return len(pivots)


def rank(rows: Iterable[Sequence], stop_at: int | None = None) -> int:
    """Rank over Q by fraction-free elimination of the integer-scaled rows.

    With ``stop_at`` the scan ends as soon as that rank is reached.
    """
    return _int_rank((_scale_to_int([as_rat(x) for x in row]) for row in rows), stop_at)


def affine_rank(points: Sequence[Sequence], stop_at: int | None = None) -> int:
    """Dimension of the affine hull of a nonempty point set."""
    if not points:
        raise EmptyPolytope("affine hull of the empty set")
    p0 = points[0]
    return rank(([a - b for a, b in zip(p, p0)] for p in points[1:]), stop_at)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _scale_to_int(row: Sequence[Fraction]) -> list[int]:
    den = lcm_denominators(row)
    ints = [int(x * den) for x in row]
    g = reduce(math.gcd, ints, 0)
    return [x // g for x in ints] if g > 1 else ints


class _AffineChart:
    """Solve the explicit equalities: x = base + lift(z) with z the free coordinates."""

    def __init__(self, P: HPolytope):
        n = P.ambient_dim
        if P.equalities:
            aug = [list(c) + [d] for c, d in P.equalities]
            red, piv = _rref(aug)
            if n in piv:
                raise EmptyPolytope("inconsistent equalities")
        else:
            red, piv = [], []
        self.n = n
        self.pivots = piv
        self.free = [j for j in range(n) if j not in set(piv)]
        # x_p = rhs - sum_f coef * x_f
        self.solved = [(p, row[n], [(f, row[f]) for f in self.free if row[f]]) for p, row in zip(piv, red)]

    @property
    def dim(self) -> int:
        return len(self.free)

    def restrict(self, a: Sequence[Fraction], b: Fraction) -> tuple[list[Fraction], Fraction]:
        """Rewrite ``a . x <= b`` in the free coordinates."""
        coef = {f: a[f] for f in self.free}
        rhs = b
        for p, val, deps in self.solved:
            if a[p]:
                rhs -= a[p] * val
                for f, c in deps:
                    coef[f] -= a[p] * c
        return [coef[f] for f in self.free], rhs

    def lift(self, z: Sequence[Fraction]) -> RatVector:
        x = [Fraction(0)] * self.n
        for f, zf in zip(self.free, z):
            x[f] = zf
        for p, val, deps in self.solved:
            x[p] = val - sum((c * x[f] for f, c in deps), Fraction(0))
        return tuple(x)


# ---------------------------------------------------------------------------
# double description


def _initial_basis(rows: list[list[int]], d: int) -> list[int]:
    chosen, pivots = [], []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for col, prow in pivots:
            if v[col]:
                f = v[col]
                v = [a - f * b for a, b in zip(v, prow)]
        col = next((c for c, x in enumerate(v) if x), None)
        if col is None:
            continue
        inv = 1 / v[col]
        pivots.append((col, [x * inv for x in v]))
        chosen.append(idx)
        if len(chosen) == d:
            break
    return chosen


def _inverse_columns(mat: list[list[int]]) -> list[list[int]]:
    d = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(mat)]
    red, _ = _rref(aug)
    inv = [row[d:] for row in red]
    return [_scale_to_int([inv[i][j] for i in range(d)]) for j in range(d)]


def _adjacent_pairs(Z: np.ndarray, pos: np.ndarray, neg: np.ndarray, d: int, chunk: int = 4096):
    """Combinatorial adjacency test on zero sets (rows of boolean matrix Z)."""
    Zf = Z.astype(np.float32)
    inter = Zf[pos] @ Zf[neg].T
    ip, iq = np.nonzero(inter >= d - 2)
    if ip.size == 0:
        return []
    out = []
    ZfT = Zf.T
    for s in range(0, ip.size, chunk):
        a, b = ip[s : s + chunk], iq[s : s + chunk]
        common = Z[pos[a]] & Z[neg[b]]
        size = common.sum(axis=1)
        hits = common.astype(np.float32) @ ZfT
        nsup = (hits == size[:, None]).sum(axis=1)
        keep = np.nonzero(nsup == 2)[0]
        out.extend(zip(pos[a[keep]].tolist(), neg[b[keep]].tolist()))
    return out


def double_description(rows: list[list[int]]) -> list[list[int]]:
    """Extreme rays of the pointed cone ``{y : R y >= 0}`` (integer data, primitive output).

    Raises UnboundedPolytope if the cone has a nontrivial lineality space.
    """
    d = len(rows[0])
    basis = _initial_basis(rows, d)
    if len(basis) < d:
        raise UnboundedPolytope("constraint matrix is rank deficient")
    rays = _inverse_columns([rows[i] for i in basis])
    m = len(rows)
    Z = np.zeros((d, m), dtype=bool)
    for j, bi in enumerate(basis):
        for i in range(d):
            if i != j:
                Z[i, bi] = True
    in_basis = set(basis)
    for h in range(m):
        if h in in_basis:
            continue
        row = rows[h]
        vals = [sum(a * b for a, b in zip(row, r) if a) for r in rays]
        pos = np.array([i for i, v in enumerate(vals) if v > 0], dtype=np.int64)
        neg = np.array([i for i, v in enumerate(vals) if v < 0], dtype=np.int64)
        zero = [i for i, v in enumerate(vals) if v == 0]
        if neg.size == 0:
            Z[zero, h] = True
            continue
        pairs = _adjacent_pairs(Z, pos, neg, d) if pos.size else []
        new_rays, new_z = [], []
        for p, q in pairs:
            vp, vq = vals[p], -vals[q]
            r = [vp * a + vq * b for a, b in zip(rays[q], rays[p])]
            g = reduce(math.gcd, r, 0)
            if g > 1:
                r = [x // g for x in r]
            new_rays.append(r)
            z = Z[p] & Z[q]
            z[h] = True
            new_z.append(z)
        keep = sorted(pos.tolist() + zero)
        Z[zero, h] = True
        rays = [rays[i] for i in keep] + new_rays
        Z = np.vstack([Z[keep]] + ([np.array(new_z)] if new_z else [])) if (keep or new_z) else np.zeros((0, m), bool)
        if not rays:
            break
    return rays


def _homogenised_rows(P: HPolytope, chart: _AffineChart) -> list[list[int]]:
    rows = {}
    D = chart.dim
    for a, b in P.inequalities:
        coef, rhs = chart.restrict(a, b)
        if not any(coef):
            if rhs < 0:
                raise EmptyPolytope("constant constraint violated")
            continue
        # b*lam - a.z >= 0
        r = tuple(_scale_to_int([-c for c in coef] + [rhs]))
        rows.setdefault(r, None)
    rows = [list(r) for r in rows]
    rows.insert(0, [0] * D + [1])
    return rows


def vertices(P: HPolytope) -> VRep:
    """All vertices of a bounded polytope, exact and lexicographically sorted."""
    chart = _AffineChart(P)
    D = chart.dim
    if D == 0:
        x = chart.lift([])
        if not P.contains(x):
            raise EmptyPolytope("the unique solution of the equalities violates an inequality")
        return VRep(P.ambient_dim, (x,))
    rows = _homogenised_rows(P, chart)
    rays = double_description(rows)
    verts = []
    for r in rays:
        lam = r[-1]
        if lam == 0:
            raise UnboundedPolytope("recession direction found")
        verts.append(chart.lift([Fraction(v, lam) for v in r[:-1]]))
    if not verts:
        raise EmptyPolytope("no feasible point")
    return VRep(P.ambient_dim, tuple(sorted(set(verts))))


def is_vertex(P: HPolytope, x: Sequence) -> bool:
    x = as_vector(x)
    if not P.contains(x):
        raise NotInPolytope("point violates a constraint")
    tight = [c for c, _ in P.equalities] + [P.inequalities[i][0] for i in P.tight_inequalities(x)]
    return rank(tight) == P.ambient_dim


def affine_dim(P: HPolytope, vrep: VRep | None = None) -> int:
    vrep = vrep if vrep is not None else vertices(P)
    return affine_rank(vrep.vertices)


def facet_count(P: HPolytope, vrep: VRep | None = None) -> int:
    """Number of facets, read off from the tight vertex sets of the inequalities.

    An inequality defines a facet when the vertices on it span an affine
    space of dimension one less than the polytope; repeated tight sets count once.
    """
    vrep = vrep if vrep is not None else vertices(P)
    verts = vrep.vertices
    D = affine_rank(verts)
    if D == 0:
        raise ZeroDimensional("a point has no facets")
    L = lcm_denominators(x for v in verts for x in v)
    iverts = [[int(x * L) for x in v] for v in verts]
    seen: set[frozenset[int]] = set()
    count = 0
    for a, b in P.inequalities:
        ia = _scale_to_int(list(a) + [b])
        ib = ia.pop() * L
        tight = frozenset(i for i, v in enumerate(iverts) if sum(x * y for x, y in zip(ia, v) if x) == ib)
        if not tight or len(tight) == len(verts) or tight in seen:
            continue
        seen.add(tight)
        if len(tight) < D:
            continue
        idx = sorted(tight)
        p0 = iverts[idx[0]]
        diffs = ([x - y for x, y in zip(iverts[i], p0)] for i in idx[1:])
        if _int_rank(diffs, stop_at=D - 1) == D - 1:
            count += 1
    return count


def vertex_denominators(vrep: VRep) -> tuple[list[int], int]:
    per = [lcm_denominators(v) for v in vrep.vertices]
    return per, max(per, default=1)


# ---------------------------------------------------------------------------
# lattice points


def _integer_le_rows(P: HPolytope) -> list[tuple[list[int], int]]:
    out = []
    for a, b in P.inequalities:
        r = _scale_to_int(list(a) + [b])
        out.append((r[:-1], r[-1]))
    for c, d in P.equalities:
        r = _scale_to_int(list(c) + [d])
        out.append((r[:-1], r[-1]))
        out.append(([-x for x in r[:-1]], -r[-1]))
    return out


def _floordiv(a: int, b: int) -> int:
    return a // b


def _ceildiv(a: int, b: int) -> int:
    return -((-a) // b)


def propagate_bounds(P: HPolytope, max_rounds: int = 500):
    """Integer bounds on every coordinate implied by single-constraint projection.

    Returns ``(lo, hi)`` lists, or ``None`` if some interval is empty.
    Raises UnboundedPolytope if a coordinate stays unbounded.
    """
    n = P.ambient_dim
    rows = _integer_le_rows(P)
    lo: list[int | None] = [None] * n
    hi: list[int | None] = [None] * n
    for _ in range(max_rounds):
        changed = False
        for a, b in rows:
            terms = []
            ninf = 0
            total = 0
            for l, al in enumerate(a):
                if not al:
                    continue
                bound = lo[l] if al > 0 else hi[l]
                if bound is None:
                    ninf += 1
                    terms.append((l, al, None))
                else:
                    total += al * bound
                    terms.append((l, al, al * bound))
            for l, al, own in terms:
                if ninf - (own is None) > 0:
                    continue
                resid = b - (total - (own or 0))
                if al > 0:
                    nb = _floordiv(resid, al)
                    if hi[l] is None or nb < hi[l]:
                        hi[l] = nb
                        changed = True
                else:
                    nb = _ceildiv(resid, al)
                    if lo[l] is None or nb > lo[l]:
                        lo[l] = nb
                        changed = True
                if lo[l] is not None and hi[l] is not None and lo[l] > hi[l]:
                    return None
        if not changed:
            break
    if any(v is None for v in lo) or any(v is None for v in hi):
        raise UnboundedPolytope("interval propagation could not bound every coordinate")
    return lo, hi


class _LatticeSearch:
    def __init__(self, P: HPolytope, strict: bool = False):
        self.n = n = P.ambient_dim
        rows = _integer_le_rows(P)
        if strict:
            k = len(P.inequalities)
            rows = [(a, b - 1) if i < k else (a, b) for i, (a, b) in enumerate(rows)]
        bounds = propagate_bounds(P)
        self.empty = bounds is None
        if self.empty:
            return
        lo, hi = bounds
        self.lo, self.hi = lo, hi
        self.rows = rows
        self.var_rows: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for c, (a, b) in enumerate(rows):
            mins = [al * (lo[l] if al > 0 else hi[l]) if al else 0 for l, al in enumerate(a)]
            suffix = [0] * (n + 1)
            for l in range(n - 1, -1, -1):
                suffix[l] = suffix[l + 1] + mins[l]
            for i, ai in enumerate(a):
                if ai:
                    # a_i x_i <= b - partial - min over later coordinates
                    self.var_rows[i].append((c, ai, b - suffix[i + 1]))

    def run(self, collect: bool, max_nodes: int | None):
        if self.empty:
            return [] if collect else 0
        n = self.n
        partial = [0] * len(self.rows)
        x = [0] * n
        out = []
        count = 0
        nodes = 0
        lo, hi, var_rows = self.lo, self.hi, self.var_rows

        def rec(i):
            nonlocal count, nodes
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetExceeded(f"lattice search exceeded {max_nodes} nodes")
            a, bnd = lo[i], hi[i]
            for c, ai, cap in var_rows[i]:
                r = cap - partial[c]
                if ai > 0:
                    v = r // ai
                    if v < bnd:
                        bnd = v
                else:
                    v = -((-r) // ai)
                    if v > a:
                        a = v
                if a > bnd:
                    return
            rows_i = var_rows[i]
            for v in range(a, bnd + 1):
                for c, ai, _ in rows_i:
                    partial[c] += ai * v
                x[i] = v
                if i + 1 == n:
                    if collect:
                        out.append(tuple(x))
                    count += 1
                else:
                    rec(i + 1)
                for c, ai, _ in rows_i:
                    partial[c] -= ai * v

        rec(0)
        return out if collect else count


def lattice_points(P: HPolytope, max_nodes: int | None = None) -> list[tuple[int, ...]]:
    """Integer points of ``P`` in lexicographic order."""
    return _LatticeSearch(P).run(True, max_nodes)


def count_lattice_points(P: HPolytope, max_nodes: int | None = None) -> int:
    return _LatticeSearch(P).run(False, max_nodes)


def interior_lattice_points(P: HPolytope) -> list[tuple[int, ...]]:
    """Integer points satisfying every inequality strictly (equalities kept).

    Only meaningful as relative-interior points when no inequality is an
    implicit equality.
    """
    return _LatticeSearch(P, strict=True).run(True, None)
