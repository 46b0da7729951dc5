"""Exact Ehrhart polynomials and quasi-polynomials from lattice-point counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .errors import DegreeOverflow, InputError, NoPeriodFound, NotAPolynomial
from .exactgeom import HPolytope, affine_dim, count_lattice_points, dilate, interior_lattice_points

Coeffs = tuple[Fraction, ...]


def evaluate(coeffs: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _newton_to_monomial(xs: Sequence[Fraction], dd: Sequence[Fraction]) -> list[Fraction]:
    # Horner on the Newton form: p = dd0 + (t - x0)(dd1 + (t - x1)(...))
    out = [Fraction(0)] * len(dd)
    out[0] = dd[-1]
    deg = 0
    for k in range(len(dd) - 2, -1, -1):
        # out <- out * (t - xs[k]) + dd[k]
        deg += 1
        new = [Fraction(0)] * len(dd)
        for i in range(deg):
            new[i + 1] += out[i]
            new[i] -= out[i] * xs[k]
        new[0] += dd[k]
        out = new
    return out


def interpolate_polynomial(points: Sequence[tuple[int, int]], degree: int | None = None) -> Coeffs:
    """Exact coefficients (low to high) of the polynomial through ``points``.

    With ``degree`` given, the first ``degree + 1`` points determine the
    polynomial and every further point must lie on it. Trailing zero
    coefficients are dropped, except that the zero polynomial is ``(0,)``.

    Raises
    ------
    DegreeOverflow
        If a point beyond the first ``degree + 1`` is off the polynomial.
    """
    pts = [(Fraction(t), Fraction(c)) for t, c in points]
    if len({t for t, _ in pts}) != len(pts):
        raise InputError("interpolation nodes must be distinct")
    if degree is None:
        degree = len(pts) - 1
    if degree < 0 or len(pts) < degree + 1:
        raise InputError(f"need at least {degree + 1} points, got {len(pts)}")
    fit, rest = pts[: degree + 1], pts[degree + 1 :]
    xs = [t for t, _ in fit]
    dd = [c for _, c in fit]
    for level in range(1, len(dd)):
        for i in range(len(dd) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = _newton_to_monomial(xs, dd)
    for t, c in rest:
        if evaluate(coeffs, t) != c:
            raise DegreeOverflow(f"point ({t}, {c}) is not on the degree-{degree} interpolant")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass
class CountFunction:
    """``t -> #(tP cap Z^N)`` with the dimension of P; ``label`` names the counter."""

    evaluator: Callable[[int], int]
    dim: int
    label: str = "generic"
    cache: dict[int, int] = field(default_factory=dict, repr=False)

    def __call__(self, t: int) -> int:
        if t not in self.cache:
            self.cache[t] = int(self.evaluator(t))
        return self.cache[t]

    @classmethod
    def from_polytope(cls, P: HPolytope, dim: int | None = None, max_nodes: int | None = None) -> "CountFunction":
        d = affine_dim(P) if dim is None else dim
        return cls(lambda t: count_lattice_points(dilate(P, t), max_nodes=max_nodes), d, "generic")


@dataclass
class EhrhartFit:
    coeffs: Coeffs
    nodes: tuple[int, ...]
    verified: tuple[int, ...]
    value_at_zero: Fraction
    counter: str

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        return evaluate(self.coeffs, t)


def ehrhart_polynomial(f: CountFunction, verify_extra: int = 3, *, start: int = 1) -> EhrhartFit:
    """Fit the Ehrhart polynomial on ``t = start .. start + d`` and check the next ``verify_extra`` values.

    Raises
    ------
    NotAPolynomial
        If any verification count is off the fitted polynomial.
    """
    if verify_extra < 0:
        raise InputError("verify_extra must be nonnegative")
    d = f.dim
    nodes = tuple(range(start, start + d + 1))
    extra = tuple(range(start + d + 1, start + d + 1 + verify_extra))
    coeffs = interpolate_polynomial([(t, f(t)) for t in nodes])
    for t in extra:
        if evaluate(coeffs, t) != f(t):
            raise NotAPolynomial(f"count at t={t} is {f(t)}, polynomial gives {evaluate(coeffs, t)}")
    return EhrhartFit(coeffs, nodes, extra, evaluate(coeffs, 0), f.label)


@dataclass
class QuasiPolynomial:
    period: int
    constituents: tuple[Coeffs, ...]
    failed_periods: tuple[int, ...] = ()
    denominator_lcm: int | None = None

    def __call__(self, t: int) -> Fraction:
        return evaluate(self.constituents[t % self.period], t)

    @property
    def collapsed(self) -> bool:
        return self.denominator_lcm is not None and self.period < self.denominator_lcm


def _divisors(m: int) -> list[int]:
    return [p for p in range(1, m + 1) if m % p == 0]


def quasi_polynomial(f: CountFunction, denominator_lcm: int, verify_extra: int = 3) -> QuasiPolynomial:
    """Smallest period dividing ``denominator_lcm`` that reproduces the counts.

    For a candidate period p each residue class gets its own polynomial,
    fitted from ``t = 1 .. p(d+1)``; the fit must then hold on the next
    ``p * verify_extra`` values of t.
    """
    if denominator_lcm < 1:
        raise InputError("denominator_lcm must be positive")
    d = f.dim
    failed = []
    for p in _divisors(denominator_lcm):
        fit_ts = range(1, p * (d + 1) + 1)
        check_ts = range(p * (d + 1) + 1, p * (d + 1 + verify_extra) + 1)
        constituents = []
        for r in range(p):
            pts = [(t, f(t)) for t in fit_ts if t % p == r]
            constituents.append(interpolate_polynomial(pts, degree=d))
        q = QuasiPolynomial(p, tuple(constituents), tuple(failed), denominator_lcm)
        if all(q(t) == f(t) for t in check_ts):
            return q
        failed.append(p)
    raise NoPeriodFound(f"no period dividing {denominator_lcm} fits the counts")


def reciprocity_check(coeffs: Sequence[Fraction], P: HPolytope, dim: int | None = None) -> tuple[Fraction, int]:
    """``((-1)^d L(P; -1), #interior lattice points)``; equal when P is a lattice polytope
    and for many period-collapsing ones. Reported, not asserted."""
    d = affine_dim(P) if dim is None else dim
    return (-1) ** d * evaluate(coeffs, -1), len(interior_lattice_points(P))


def binomial_basis(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Coordinates in the basis C(t + d - i, d), i = 0..d (the h*-style expansion)."""
    d = len(coeffs) - 1
    vals = [evaluate(coeffs, t) for t in range(d + 1)]
    # L(t) = sum_i h_i C(t + d - i, d); solve the triangular system in t = 0..d
    h = []
    for t in range(d + 1):
        acc = vals[t] - sum(h[i] * comb(t + d - i, d) for i in range(t))
        h.append(acc)
    return tuple(h)
