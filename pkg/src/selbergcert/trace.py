"""Rigorous enclosures of the three terms of the trace formula.

For a pair (u, v) and genus g:

    integral term   I = 2(g-1) int_0^inf r v(r^2) exp(-r^2/2) tanh(pi r) dr
    geometric term  G = (2 pi)^(-1/2) sum mult * l * u(l^2) exp(-l^2/2) / sinh(l/2)
    spectral const  fhat(i/2) = v(-1/4) exp(1/8)

The finite part of I is integrated by adaptive bisection on [0, T] with a
Taylor model on each piece: the integrand's Taylor polynomial at the piece
centre is integrated exactly and the Lagrange remainder is bounded from the
next Taylor coefficient enclosed over the whole piece. The tail beyond T has
a closed form once tanh is bracketed by [tanh(pi T), 1].
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from gmpy2 import mpfr, mpq

from .exactpoly import RationalPolynomial, sturm_count, to_rational
from .interval import (
    Interval,
    _rounders,
    eval_poly_interval,
    exp,
    pi_const,
    sinh,
    sqrt,
    tanh,
)
from .testfn import TestFunctionPair, gaussian_tail_antiderivative

DEFAULT_CUTOFF = Fraction(100)
DEFAULT_TOLERANCE = Fraction(1, 10**8)
DEFAULT_MAX_DEPTH = 60
TAYLOR_ORDER = 16


@dataclass(frozen=True)
class QuadratureConfig:
    cutoff_T: Fraction = DEFAULT_CUTOFF
    tolerance: Fraction = DEFAULT_TOLERANCE
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        object.__setattr__(self, "cutoff_T", to_rational(self.cutoff_T))
        object.__setattr__(self, "tolerance", to_rational(self.tolerance))
        if self.cutoff_T <= 0:
            raise ValueError("cutoff must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


@dataclass(frozen=True)
class TermEnclosures:
    integral_term: Interval
    geometric_term: Interval
    spectral_constant: Interval
    genus: int
    quadrature_width: float = 0.0
    quadrature_pieces: int = 0


class QuadratureNotConverged(RuntimeError):
    """Bisection hit ``max_depth`` before the width target; the sound enclosure is attached."""

    def __init__(self, enclosure: Interval, width: float, tolerance: float):
        super().__init__(f"quadrature reached width {width:.3e}, target {tolerance:.3e}")
        self.enclosure = enclosure
        self.width = width


@dataclass
class QuadratureResult:
    enclosure: Interval
    finite_part: Interval
    tail_part: Interval
    width: float
    pieces: int
    converged: bool


# ----------------------------------------------------------------------------
# Taylor coefficient recurrences (intervals in, intervals out)
# ----------------------------------------------------------------------------


def _gauss_series(x: Interval, order: int) -> list[Interval]:
    """Taylor coefficients of exp(-r^2/2) at r = x: k g_k = -x g_{k-1} - g_{k-2}."""
    g0 = exp(-(x.sqr().scale2(-1)))
    out = [g0]
    if order >= 1:
        out.append(-(x * g0))
    for k in range(2, order + 1):
        out.append(-(x * out[k - 1] + out[k - 2]) / k)
    return out


def _tanh_series(x: Interval, order: int, pi: Interval) -> list[Interval]:
    """Taylor coefficients of tanh(pi r) at r = x, from h' = pi (1 - h^2)."""
    t = [tanh(pi * x)]
    for k in range(order):
        sq = Interval(0)
        for i in range(k + 1):
            sq = sq + t[i] * t[k - i]
        rhs = (1 - sq) if k == 0 else -sq
        t.append(pi * rhs / (k + 1))
    return t


def _convolve(a: list[Interval], b: list[Interval], order: int) -> list[Interval]:
    out = []
    for k in range(order + 1):
        acc = Interval(0)
        for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
            acc = acc + a[i] * b[k - i]
        out.append(acc)
    return out


def _taylor_shift_exact(coeffs: list, c) -> list:
    """Coefficients of p(c + t) in t (exact, gmpy2 rationals)."""
    b = list(coeffs)
    n = len(b)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            b[j] = b[j] + c * b[j + 1]
    return b


_BINOM_CACHE: dict[tuple[int, int], int] = {}


def _binom(n: int, k: int) -> int:
    key = (n, k)
    v = _BINOM_CACHE.get(key)
    if v is None:
        v = math.comb(n, k)
        _BINOM_CACHE[key] = v
    return v


class _PolyFactor:
    """The factor P(r) = r v(r^2) (or v(r^2) when no r weight) prepared for repeated shifting."""

    def __init__(self, v: RationalPolynomial, r_weight: bool = True):
        p = v.compose_square()
        if r_weight:
            p = p * RationalPolynomial.monomial(1)
        self.coeffs = [mpq(c.numerator, c.denominator) for c in p.coeffs]
        self.degree = len(self.coeffs) - 1

    def at(self, c: Fraction, h: Fraction, order: int) -> tuple[list[Interval], list[Interval]]:
        """Point Taylor coefficients at c (orders 0..order) and enclosures over [c-h, c+h] (0..order+1)."""
        shifted = _taylor_shift_exact(self.coeffs, mpq(c.numerator, c.denominator))
        ivs = [_iv_mpq(s) for s in shifted]
        point = ivs[: order + 1]
        while len(point) < order + 1:
            point.append(Interval(0))
        # centred form of the higher coefficients over the piece
        _, u = _rounders()
        hm = _iv_mpq(mpq(h.numerator, h.denominator)).hi
        mags = [max(u.abs(iv.lo), u.abs(iv.hi)) for iv in ivs]
        wide = []
        for i in range(order + 2):
            if i > self.degree:
                wide.append(Interval(0))
                continue
            err = mpfr(0)
            hp = mpfr(1)
            for j in range(1, self.degree - i + 1):
                hp = u.mul(hp, hm)
                err = u.add(err, u.mul(u.mul(mpfr(_binom(i + j, j)), mags[i + j]), hp))
            base = ivs[i]
            d = _rounders()[0]
            wide.append(Interval._raw(d.sub(base.lo, err), u.add(base.hi, err)))
        return point, wide


def _iv_mpq(q) -> Interval:
    d, u = _rounders()
    return Interval._raw(mpfr(q, 0, context=d), mpfr(q, 0, context=u))


# ----------------------------------------------------------------------------
# Adaptive quadrature
# ----------------------------------------------------------------------------


@dataclass(order=True)
class _Piece:
    priority: float
    lo: Fraction = field(compare=False)
    hi: Fraction = field(compare=False)
    depth: int = field(compare=False)
    enclosure: Interval = field(compare=False)
    width: float = field(compare=False)


class _Integrator:
    def __init__(self, v: RationalPolynomial, with_tanh: bool, order: int):
        self.poly = _PolyFactor(v)
        self.with_tanh = with_tanh
        self.order = order
        self.pi = pi_const()

    def piece(self, lo: Fraction, hi: Fraction) -> Interval:
        K = self.order
        c = (lo + hi) / 2
        h = (hi - lo) / 2
        ci = Interval(c)
        X = Interval(lo, hi)
        p_pt, p_x = self.poly.at(c, h, K)
        g_pt = _gauss_series(ci, K)
        g_x = _gauss_series(X, K + 1)
        pg_pt = _convolve(p_pt, g_pt, K)
        pg_x = _convolve(p_x, g_x, K + 1)
        if self.with_tanh:
            t_pt = _tanh_series(ci, K, self.pi)
            t_x = _tanh_series(X, K + 1, self.pi)
            f_pt = _convolve(pg_pt, t_pt, K)
            top = _convolve(pg_x, t_x, K + 1)[K + 1]
        else:
            f_pt = pg_pt
            top = pg_x[K + 1]
        hI = Interval(h)
        total = Interval(0)
        hpow = hI  # h^(k+1)
        for k in range(K + 1):
            if k % 2 == 0:
                total = total + f_pt[k] * hpow.scale2(1) / (k + 1)
            hpow = hpow * hI
        # hpow is now h^(K+2)
        bound = (Interval(top.mag()) * hpow.scale2(1) / (K + 2)).hi
        return total + Interval._raw(-bound, bound)


def _width(x: Interval) -> float:
    return float(x.width())


def integrate_finite(
    v: RationalPolynomial,
    T,
    tolerance=DEFAULT_TOLERANCE,
    max_depth: int = DEFAULT_MAX_DEPTH,
    with_tanh: bool = True,
    order: int = TAYLOR_ORDER,
) -> tuple[Interval, float, int, bool]:
    """Enclose int_0^T r v(r^2) exp(-r^2/2) [tanh(pi r)] dr.

    Returns (enclosure, achieved width, number of pieces, converged).
    """
    T = to_rational(T)
    tol = float(to_rational(tolerance))
    if v.is_zero():
        return Interval(0), 0.0, 0, True
    integ = _Integrator(v, with_tanh, order)
    enc = integ.piece(Fraction(0), T)
    w = _width(enc)
    heap = [_Piece(-w, Fraction(0), T, 0, enc, w)]
    frozen: list[_Piece] = []
    # exact running total: early pieces can be astronomically wide
    total = Fraction(w)
    while heap and total > tol:
        top = heapq.heappop(heap)
        if top.depth >= max_depth:
            frozen.append(top)
            continue
        mid = (top.lo + top.hi) / 2
        total -= Fraction(top.width)
        for a, b in ((top.lo, mid), (mid, top.hi)):
            e = integ.piece(a, b)
            pw = _width(e)
            total += Fraction(pw)
            heapq.heappush(heap, _Piece(-pw, a, b, top.depth + 1, e, pw))
    pieces = sorted(heap + frozen, key=lambda p: p.lo)
    result = Interval(0)
    for p in pieces:
        result = result + p.enclosure
    width = _width(result)
    return result, width, len(pieces), width <= tol or total <= tol


def gaussian_tail(v: RationalPolynomial, T) -> Interval:
    """Exact closed form J = int_T^inf r v(r^2) exp(-r^2/2) dr = -q(T^2) exp(-T^2/2) / 2."""
    T = to_rational(T)
    q = gaussian_tail_antiderivative(v)
    return Interval(-q(T * T) / 2) * exp(Interval(-T * T / 2))


def tail_with_tanh(v: RationalPolynomial, T) -> Interval:
    """Enclose int_T^inf r v(r^2) exp(-r^2/2) tanh(pi r) dr.

    When v keeps one sign on [T^2, inf) the integrand does too, and since
    tanh(pi r) lies in [tanh(pi T), 1] the integral lies between J tanh(pi T)
    and J. Otherwise the deficit against J is bounded by (1 - tanh(pi T))
    times the same integral for the coefficient-wise absolute value of v.
    """
    T = to_rational(T)
    if v.is_zero():
        return Interval(0)
    J = gaussian_tail(v, T)
    th = tanh(pi_const() * T)
    T2 = T * T
    if sturm_count(v, T2) == 0:
        return J.hull(J * th)
    J_abs = gaussian_tail(v.abs_coeffs(), T)
    slack = ((1 - th) * J_abs).hi
    return J + Interval._raw(-slack, slack)


def half_line_integral(v: RationalPolynomial, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    cfg = cfg or QuadratureConfig()
    finite, width, pieces, ok = integrate_finite(v, cfg.cutoff_T, cfg.tolerance, cfg.max_depth)
    tail = tail_with_tanh(v, cfg.cutoff_T)
    enc = finite + tail
    return QuadratureResult(enc, finite, tail, _width(enc), pieces, ok)


def integral_term(
    pair: TestFunctionPair,
    genus: int,
    cfg: QuadratureConfig | None = None,
    direction: str = "upper",
    *,
    details: bool = False,
):
    """Enclosure of I = 2(g-1) int_0^inf r fhat(r) tanh(pi r) dr.

    The tail bracket is sign aware, so the same code serves upper and lower
    certificates; ``direction`` is accepted for symmetry with the callers.
    Raises QuadratureNotConverged (carrying the sound but wide enclosure) if
    the width target is missed.
    """
    if genus < 2:
        raise ValueError("genus must be at least 2")
    if direction not in ("upper", "lower", "upper_cert", "lower_cert"):
        raise ValueError(f"unknown direction {direction!r}")
    res = half_line_integral(pair.v, cfg)
    term = res.enclosure * (2 * (genus - 1))
    if not res.converged:
        raise QuadratureNotConverged(term, _width(res.finite_part), float((cfg or QuadratureConfig()).tolerance))
    if details:
        return term, res
    return term


def spectral_constant(pair: TestFunctionPair) -> Interval:
    """fhat(i/2) = v(-1/4) exp(1/8), with v(-1/4) exact."""
    return Interval(pair.v(Fraction(-1, 4))) * exp(Interval(Fraction(1, 8)))


def _length_enclosures(geodesics) -> list[tuple[Interval, int]]:
    if geodesics is None:
        return []
    if hasattr(geodesics, "enclosures"):
        return list(geodesics.enclosures())
    return [(length if isinstance(length, Interval) else Interval(length), int(m)) for length, m in geodesics]


def geometric_term(pair: TestFunctionPair, geodesics) -> Interval:
    """Enclose (2 pi)^(-1/2) sum mult * l u(l^2) exp(-l^2/2) / sinh(l/2)."""
    entries = _length_enclosures(geodesics)
    if not entries:
        return Interval(0)
    total = Interval(0)
    for length, mult in entries:
        if not length.lo > 0:
            raise ValueError("geodesic lengths must be positive")
        y = length.sqr()
        term = length * eval_poly_interval(pair.u, y) * exp(-y.scale2(-1)) / sinh(length.scale2(-1))
        total = total + term * mult
    return total / sqrt(pi_const().scale2(1))


def trace_terms(pair: TestFunctionPair, genus: int, geodesics=None, cfg: QuadratureConfig | None = None,
                direction: str = "upper") -> TermEnclosures:
    term, res = integral_term(pair, genus, cfg, direction, details=True)
    return TermEnclosures(
        integral_term=term,
        geometric_term=geometric_term(pair, geodesics),
        spectral_constant=spectral_constant(pair),
        genus=genus,
        quadrature_width=res.width,
        quadrature_pieces=res.pieces,
    )
