"""Exact sign and shape checks behind the upper and lower counting lemmas.

Everything here is decided by Sturm counts and exact rational evaluation.
Intervals appear only in the returned enclosure of c, the extreme value of
the Fourier transform over the eigenvalue window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactpoly import (
    RationalPolynomial,
    count_roots_open,
    isolate_roots,
    sign,
    sturm_count,
    to_rational,
)
from .interval import Interval
from .testfn import TestFunctionPair, fhat_at

QUARTER = Fraction(1, 4)

NONPOSITIVE = -1
NONNEGATIVE = 1

CONDITIONS = (
    "u_nonpositive_ray",
    "u_nonnegative_ray",
    "v_nonnegative_tail",
    "v_nonpositive_tail",
    "fhat_min_at_endpoints",
    "fhat_decreasing",
)


@dataclass(frozen=True)
class SignVerdict:
    condition: str
    holds: bool
    witness: str

    def __bool__(self) -> bool:
        return self.holds


def parse_sign(s) -> int:
    """Accept -1/+1 or the spellings '<=0', '≤0', '>=0', '≥0'."""
    if s in (NONPOSITIVE, NONNEGATIVE):
        return s
    text = str(s).replace(" ", "")
    if text in ("<=0", "≤0", "nonpositive"):
        return NONPOSITIVE
    if text in (">=0", "≥0", "nonnegative"):
        return NONNEGATIVE
    raise ValueError(f"unknown sign requirement {s!r}")


def _sign_word(s: int) -> str:
    return "<= 0" if s == NONPOSITIVE else ">= 0"


def _fmt(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    f = float(x)
    return f"{f:.6g}" if abs(f) > 1e-4 or f == 0 else f"{f:.3e}"


def one_signed_from(
    p: RationalPolynomial,
    y0,
    required: int,
    known_double_zeros: Iterable,
    condition: str,
) -> SignVerdict:
    """Check ``sign * p >= 0`` on ``[y0, inf)`` with the given double zeros (squared variable)."""
    if p.is_zero():
        raise ValueError("sign check of the zero polynomial")
    required = parse_sign(required)
    y0 = to_rational(y0)
    zeros = sorted({to_rational(z) for z in known_double_zeros if to_rational(z) > y0})
    notes = []
    at_y0 = p(y0)
    s0 = sign(at_y0)
    if s0 == -required:
        rel = "< 0" if s0 < 0 else "> 0"
        return SignVerdict(condition, False, f"p(y0) {rel} at y0 = {_fmt(y0)}")
    d1, d2 = p.derivative(), p.derivative(2)
    for z in zeros:
        if p(z) != 0 or d1(z) != 0:
            return SignVerdict(condition, False, f"declared double zero {_fmt(z)} is not a double root")
        s2 = sign(d2(z))
        if s2 != required:
            why = "vanishes" if s2 == 0 else "has the wrong sign"
            return SignVerdict(condition, False, f"second derivative {why} at declared double zero {_fmt(z)}")
    count = sturm_count(p, y0)
    if count != len(zeros):
        return SignVerdict(
            condition,
            False,
            f"{count} distinct roots beyond {_fmt(y0)} but {len(zeros)} declared double zeros",
        )
    # sample strictly between y0 and the first root beyond it
    first = zeros[0] if zeros else y0 + 2
    sample = (y0 + first) / 2
    if sign(p(sample)) != required:
        return SignVerdict(condition, False, f"wrong sign at sample point {_fmt(sample)}")
    notes.append(f"{count} distinct roots beyond y0 = {_fmt(y0)}, all declared double")
    notes.append(f"p(y0) = {_fmt(at_y0)}")
    return SignVerdict(condition, True, "; ".join(notes))


def verify_one_signed_ray(
    p: RationalPolynomial,
    x0,
    sign_required,
    known_double_zeros: Iterable = (),
    condition: str | None = None,
) -> SignVerdict:
    """Check that ``p(x^2)`` has the required sign for every real ``x >= x0``."""
    required = parse_sign(sign_required)
    x0 = to_rational(x0)
    if condition is None:
        condition = "u_nonpositive_ray" if required == NONPOSITIVE else "u_nonnegative_ray"
    return one_signed_from(p, x0 * x0, required, known_double_zeros, condition)


def _declared(pair: TestFunctionPair, attr: str) -> tuple[Fraction, ...]:
    return getattr(pair.spec, attr) if pair.spec is not None else ()


def verify_tail_sign(pair: TestFunctionPair, b, sign_required) -> SignVerdict:
    """Check that v has the required sign on ``[b - 1/4, inf)``."""
    b = to_rational(b)
    if b <= QUARTER:
        raise ValueError("tail check needs b > 1/4")
    required = parse_sign(sign_required)
    condition = "v_nonnegative_tail" if required == NONNEGATIVE else "v_nonpositive_tail"
    return one_signed_from(pair.v, b - QUARTER, required, _declared(pair, "v_double_zeros"), condition)


def _window(a, b) -> tuple[Fraction, Fraction]:
    a, b = to_rational(a), to_rational(b)
    if not QUARTER < a:
        raise ValueError("window needs a > 1/4")
    if a >= b:
        raise ValueError("a < b violated")
    return a - QUARTER, b - QUARTER


def _min_enclosure(x: Interval, y: Interval) -> Interval:
    return Interval._raw(min(x.lo, y.lo), min(x.hi, y.hi))


def verify_fhat_min(pair: TestFunctionPair, a, b) -> tuple[SignVerdict, Interval]:
    """Certify that the minimum of the Fourier transform over the window sits at an endpoint.

    Returns the verdict and an enclosure of that minimum c.
    """
    ya, yb = _window(a, b)
    shape = pair.shape_poly
    ca, cb = fhat_at(pair, ya), fhat_at(pair, yb)
    c = _min_enclosure(ca, cb)
    if shape.is_zero():
        return SignVerdict("fhat_min_at_endpoints", True, "transform is constant in the window"), c
    n = count_roots_open(shape, ya, yb)
    if n == 0:
        return SignVerdict("fhat_min_at_endpoints", True, "no critical point inside: monotone on the window"), c
    if n == 1:
        sa, sb = sign(shape(ya)), sign(shape(yb))
        if sa > 0 and sb < 0:
            (lo, hi), = isolate_roots(shape, ya, yb, Fraction(1, 10**6))
            where = _fmt((lo + hi) / 2 + QUARTER)
            return SignVerdict(
                "fhat_min_at_endpoints",
                True,
                f"unique critical point (a maximum) near lambda = {where}; shape > 0 at a, < 0 at b",
            ), c
        return SignVerdict(
            "fhat_min_at_endpoints",
            False,
            f"one critical point but shape signs at the ends are {sa}, {sb} (need +, -)",
        ), c
    return SignVerdict("fhat_min_at_endpoints", False, f"{n} critical points inside the window"), c


def verify_fhat_max_decreasing(pair: TestFunctionPair, a, b) -> tuple[SignVerdict, Interval]:
    """Certify that the Fourier transform decreases over the window; c is its value at a."""
    ya, yb = _window(a, b)
    shape = pair.shape_poly
    c = fhat_at(pair, ya)
    if shape.is_zero():
        return SignVerdict("fhat_decreasing", False, "transform is constant, not decreasing"), c
    n = count_roots_open(shape, ya, yb)
    if n != 0:
        return SignVerdict("fhat_decreasing", False, f"sign change detected: {n} critical points inside"), c
    mid = (ya + yb) / 2
    if sign(shape(mid)) >= 0:
        return SignVerdict("fhat_decreasing", False, "shape polynomial is not negative inside the window"), c
    if not c.lo > 0:
        return SignVerdict("fhat_decreasing", False, "value at a is not provably positive"), c
    return SignVerdict("fhat_decreasing", True, "shape < 0 throughout the window, maximum at a"), c
