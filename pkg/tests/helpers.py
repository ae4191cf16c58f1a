"""Comparisons between rigorous enclosures and printed decimal constants."""

from __future__ import annotations

from fractions import Fraction

from selbergcert.interval import Interval


def exact(x) -> Fraction:
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


def half_ulp(printed: str) -> Fraction:
    digits = printed.split(".")[1] if "." in printed else ""
    return Fraction(1, 2 * 10 ** len(digits))


def matches_printed(enc: Interval, printed: str) -> bool:
    """The enclosure meets the rounding interval of a printed decimal (agreement to all printed digits)."""
    x, h = Fraction(printed), half_ulp(printed)
    return exact(enc.lo) <= x + h and x - h <= exact(enc.hi)


def within(enc: Interval, printed: str, tol: str) -> bool:
    """Every point of the enclosure is within ``tol`` of the printed value."""
    x, t = Fraction(printed), Fraction(tol)
    return x - t <= exact(enc.lo) and exact(enc.hi) <= x + t
