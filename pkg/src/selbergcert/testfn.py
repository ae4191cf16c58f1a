"""Test function pairs built from zero placements by exact linear algebra.

A pair is determined by rational coefficients s_0..s_N through

    u(y) = sum s_n L_n(y),    v(y) = sum (-1)^n s_n L_n(y),

with L_n the Laguerre polynomials of parameter -1/2. Then
f(x) = u(x^2) exp(-x^2/2) has Fourier transform v(xi^2) exp(-xi^2/2), and any
such f is admissible, so no runtime admissibility check is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactpoly import RationalPolynomial, laguerre_half, to_rational
from .interval import Interval, eval_poly_interval, exp


class SingularSystemError(ValueError):
    """The constraint system has no unique solution."""

    def __init__(self, message: str, rank: int | None = None, size: int | None = None):
        super().__init__(message)
        self.rank = rank
        self.size = size


def _rational_tuple(values) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def _pair_tuple(values) -> tuple[tuple[Fraction, Fraction], ...]:
    return tuple((to_rational(p), to_rational(val)) for p, val in values)


@dataclass(frozen=True)
class ConstraintSpec:
    """Zero placements and value normalizations for u and v (in the squared variable)."""

    u_simple_zeros: tuple[Fraction, ...] = ()
    u_double_zeros: tuple[Fraction, ...] = ()
    u_values: tuple[tuple[Fraction, Fraction], ...] = ()
    v_simple_zeros: tuple[Fraction, ...] = ()
    v_double_zeros: tuple[Fraction, ...] = ()
    v_values: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        for name in ("u_simple_zeros", "u_double_zeros", "v_simple_zeros", "v_double_zeros"):
            object.__setattr__(self, name, _rational_tuple(getattr(self, name)))
        for name in ("u_values", "v_values"):
            object.__setattr__(self, name, _pair_tuple(getattr(self, name)))

    @property
    def constraint_count(self) -> int:
        return (
            len(self.u_simple_zeros) + 2 * len(self.u_double_zeros) + len(self.u_values)
            + len(self.v_simple_zeros) + 2 * len(self.v_double_zeros) + len(self.v_values)
        )

    def points(self, which: str) -> list[Fraction]:
        if which == "u":
            return [p for p, _ in self.u_values] + list(self.u_simple_zeros) + list(self.u_double_zeros)
        return [p for p, _ in self.v_values] + list(self.v_simple_zeros) + list(self.v_double_zeros)

    def rows(self):
        """Yield ``(side, point, derivative_order, rhs)`` in the documented matrix order.

        u constraints come first, then v; within each side the order is
        values, simple zeros, double zeros (a double zero adds a value row and
        a derivative row).
        """
        for side in ("u", "v"):
            values = self.u_values if side == "u" else self.v_values
            simple = self.u_simple_zeros if side == "u" else self.v_simple_zeros
            double = self.u_double_zeros if side == "u" else self.v_double_zeros
            for p, val in values:
                yield side, p, 0, val
            for p in simple:
                yield side, p, 0, Fraction(0)
            for p in double:
                yield side, p, 0, Fraction(0)
                yield side, p, 1, Fraction(0)


@dataclass(frozen=True)
class TestFunctionPair:
    """Solved coefficients with u, v and the derived polynomials used downstream."""

    __test__ = False  # not a pytest class

    s: tuple[Fraction, ...]
    u: RationalPolynomial
    v: RationalPolynomial
    u_prime: RationalPolynomial
    v_prime: RationalPolynomial
    shape_poly: RationalPolynomial
    tail_poly: RationalPolynomial
    spec: ConstraintSpec | None = field(default=None, compare=False)

    @property
    def N(self) -> int:
        return len(self.s) - 1

    @property
    def hermite_coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients c_n of f in the basis h_{2n}(x) = H_{2n}(x) exp(-x^2/2)."""
        return tuple(
            s / ((-1) ** n * 4**n * math.factorial(n)) for n, s in enumerate(self.s)
        )


def basis_polynomials(N: int) -> tuple[list[RationalPolynomial], list[RationalPolynomial]]:
    """Return the u-basis ``L_n`` and v-basis ``(-1)^n L_n`` for n = 0..N."""
    ub = [laguerre_half(n) for n in range(N + 1)]
    vb = [p if n % 2 == 0 else -p for n, p in enumerate(ub)]
    return ub, vb


def pair_from_coefficients(s: Sequence, spec: ConstraintSpec | None = None) -> TestFunctionPair:
    s = tuple(to_rational(c) for c in s)
    ub, vb = basis_polynomials(len(s) - 1)
    u = RationalPolynomial.constant(0)
    v = RationalPolynomial.constant(0)
    for c, pu, pv in zip(s, ub, vb):
        if c:
            u = u + pu * c
            v = v + pv * c
    v_prime = v.derivative()
    return TestFunctionPair(
        s=s,
        u=u,
        v=v,
        u_prime=u.derivative(),
        v_prime=v_prime,
        shape_poly=v_prime * 2 - v,
        tail_poly=gaussian_tail_antiderivative(v),
        spec=spec,
    )


def constraint_matrix(spec: ConstraintSpec) -> tuple[list[list[Fraction]], list[Fraction]]:
    n = spec.constraint_count
    ub, vb = basis_polynomials(n - 1)
    dub = [p.derivative() for p in ub]
    dvb = [p.derivative() for p in vb]
    matrix, rhs = [], []
    for side, point, order, value in spec.rows():
        if side == "u":
            basis = ub if order == 0 else dub
        else:
            basis = vb if order == 0 else dvb
        matrix.append([b(point) for b in basis])
        rhs.append(value)
    return matrix, rhs


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals; raises on rank deficiency."""
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        prow = a[rank]
        for r in range(n):
            if r != rank and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], prow)]
        rank += 1
    if rank < n:
        raise SingularSystemError(
            f"constraint system is rank deficient (rank {rank} of {n})", rank=rank, size=n
        )
    return [a[i][n] for i in range(n)]


def build_test_function(spec: ConstraintSpec) -> TestFunctionPair:
    """Solve for the unique pair satisfying every constraint in ``spec``."""
    n = spec.constraint_count
    if n < 1:
        raise ValueError("at least one constraint is required")
    for side in ("u", "v"):
        pts = spec.points(side)
        if len(set(pts)) != len(pts):
            dup = sorted({p for p in pts if pts.count(p) > 1})
            raise SingularSystemError(
                f"duplicated constraint point(s) for {side}: {', '.join(str(d) for d in dup)}",
                size=n,
            )
    matrix, rhs = constraint_matrix(spec)
    s = solve_exact(matrix, rhs)
    pair = pair_from_coefficients(s, spec)
    residual = substitution_residuals(pair, spec)
    if any(residual):
        raise ArithmeticError("exact re-substitution failed")  # cannot happen with exact arithmetic
    return pair


def substitution_residuals(pair: TestFunctionPair, spec: ConstraintSpec) -> list[Fraction]:
    """Exact residual of every constraint row (all zero for a correct pair)."""
    out = []
    for side, point, order, value in spec.rows():
        base = pair.u if side == "u" else pair.v
        p = base if order == 0 else (pair.u_prime if side == "u" else pair.v_prime)
        out.append(p(point) - value)
    return out


def gaussian_tail_antiderivative(v: RationalPolynomial) -> RationalPolynomial:
    """The polynomial q = -2 sum_k 2^k v^(k), the unique solution of q' - q/2 = v.

    It gives the closed form  int_T^inf r v(r^2) exp(-r^2/2) dr = -q(T^2) exp(-T^2/2) / 2.
    """
    q = RationalPolynomial.constant(0)
    d = v
    scale = Fraction(-2)
    while not d.is_zero():
        q = q + d * scale
        d = d.derivative()
        scale *= 2
    return q


def fhat_at(pair: TestFunctionPair, y) -> Interval:
    """Enclosure of v(y) exp(-y/2), where y is the squared frequency (may be negative)."""
    if isinstance(y, Interval):
        vy = eval_poly_interval(pair.v, y)
        return vy * exp(-y.scale2(-1))
    y = to_rational(y)
    return Interval(pair.v(y)) * exp(Interval(-y / 2))


def f_at(pair: TestFunctionPair, y) -> Interval:
    """Enclosure of u(y) exp(-y/2), i.e. f at x = sqrt(y)."""
    if isinstance(y, Interval):
        return eval_poly_interval(pair.u, y) * exp(-y.scale2(-1))
    y = to_rational(y)
    return Interval(pair.u(y)) * exp(Interval(-y / 2))


def gaussian_spec() -> ConstraintSpec:
    """The single constraint v(0) = 1, whose solution is the Gaussian."""
    return ConstraintSpec(v_values=((0, 1),))


__all__ = [
    "ConstraintSpec",
    "TestFunctionPair",
    "SingularSystemError",
    "build_test_function",
    "pair_from_coefficients",
    "gaussian_tail_antiderivative",
    "fhat_at",
    "f_at",
    "basis_polynomials",
    "constraint_matrix",
    "solve_exact",
    "substitution_residuals",
    "gaussian_spec",
]
