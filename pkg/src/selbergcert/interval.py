"""Rigorous interval arithmetic with outward-rounded binary endpoints.

Endpoints are MPFR floats. The basic operations (+, -, *, /, sqrt) use
MPFR's correctly rounded directed modes; every other function is computed
here from a truncated series with an explicit remainder bound, evaluated
with a few guard bits and then rounded outward to the working precision.

The working precision lives in a :mod:`contextvars` variable, so each thread
or task can pick its own without locking.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .exactpoly import RationalPolynomial

DEFAULT_PRECISION = 128
GUARD_BITS = 32

_precision: contextvars.ContextVar[int] = contextvars.ContextVar("selbergcert_precision", default=DEFAULT_PRECISION)


class DomainError(ValueError):
    """An elementary function was applied outside its real domain."""


def get_precision() -> int:
    return _precision.get()


def set_precision(bits: int) -> None:
    if bits < 24:
        raise ValueError("working precision must be at least 24 bits")
    _precision.set(int(bits))


@contextlib.contextmanager
def working_precision(bits: int):
    if bits < 24:
        raise ValueError("working precision must be at least 24 bits")
    token = _precision.set(int(bits))
    try:
        yield
    finally:
        _precision.reset(token)


@lru_cache(maxsize=64)
def _contexts(bits: int):
    down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
    return down, up


@lru_cache(maxsize=64)
def _exact_context(bits: int):
    return gmpy2.context(precision=bits)


def _exact(x: mpfr, op: str, *args) -> mpfr:
    """Apply a sign flip or power-of-two scaling with no rounding at all."""
    return getattr(_exact_context(max(x.precision, 2)), op)(x, *args)


def _rounders():
    return _contexts(_precision.get())


Number = Union[int, Fraction, str, float, "Interval"]


class Interval:
    """Closed interval ``[lo, hi]`` guaranteed to contain the exact value it stands for."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            if isinstance(lo, Interval):
                self.lo, self.hi = lo.lo, lo.hi
                return
            self.lo, self.hi = _endpoint_pair(lo)
            return
        lo_pair = _endpoint_pair(lo)
        hi_pair = _endpoint_pair(hi)
        self.lo, self.hi = lo_pair[0], hi_pair[1]
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")

    @classmethod
    def _raw(cls, lo, hi) -> "Interval":
        obj = object.__new__(cls)
        obj.lo = lo
        obj.hi = hi
        return obj

    # -- inspection -----------------------------------------------------------

    def width(self) -> mpfr:
        return _rounders()[1].sub(self.hi, self.lo)

    def mid(self) -> mpfr:
        return _rounders()[1].add(self.lo, self.hi) / 2

    def mag(self) -> mpfr:
        u = _rounders()[1]
        return max(u.abs(self.lo), u.abs(self.hi))

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            q = mpq(x.numerator, x.denominator)
            return self.lo <= q <= self.hi
        if isinstance(x, str):
            return self.contains(Fraction(x))
        return self.lo <= x <= self.hi

    __contains__ = contains

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other) -> "Interval":
        other = as_interval(other)
        return Interval._raw(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other) -> "Interval":
        other = as_interval(other)
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("intervals do not intersect")
        return Interval._raw(lo, hi)

    def __repr__(self) -> str:
        return f"Interval({format_endpoint(self.lo, 'down', 17)}, {format_endpoint(self.hi, 'up', 17)})"

    def to_floats(self) -> tuple[float, float]:
        return float(gmpy2.mpfr(self.lo, 53, context=_contexts(53)[0])), float(gmpy2.mpfr(self.hi, 53, context=_contexts(53)[1]))

    def __float__(self) -> float:
        return float(self.mid())

    def __eq__(self, other) -> bool:
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "Interval":
        return Interval._raw(_exact(self.hi, 'minus'), _exact(self.lo, 'minus'))

    def __pos__(self) -> "Interval":
        return self

    def __add__(self, other) -> "Interval":
        o = as_interval(other)
        d, u = _rounders()
        return Interval._raw(d.add(self.lo, o.lo), u.add(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = as_interval(other)
        d, u = _rounders()
        return Interval._raw(d.sub(self.lo, o.hi), u.sub(self.hi, o.lo))

    def __rsub__(self, other) -> "Interval":
        return as_interval(other) - self

    def __mul__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else as_interval(other)
        d, u = _rounders()
        a, b, c, e = self.lo, self.hi, o.lo, o.hi
        if a >= 0:
            if c >= 0:
                return Interval._raw(d.mul(a, c), u.mul(b, e))
            if e <= 0:
                return Interval._raw(d.mul(b, c), u.mul(a, e))
            return Interval._raw(d.mul(b, c), u.mul(b, e))
        if b <= 0:
            if c >= 0:
                return Interval._raw(d.mul(a, e), u.mul(b, c))
            if e <= 0:
                return Interval._raw(d.mul(b, e), u.mul(a, c))
            return Interval._raw(d.mul(a, e), u.mul(a, c))
        if c >= 0:
            return Interval._raw(d.mul(a, e), u.mul(b, e))
        if e <= 0:
            return Interval._raw(d.mul(b, c), u.mul(a, c))
        lo = min(d.mul(a, e), d.mul(b, c))
        hi = max(u.mul(a, c), u.mul(b, e))
        return Interval._raw(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = as_interval(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"interval division by {o!r}, which contains zero")
        d, u = _rounders()
        a, b, c, e = self.lo, self.hi, o.lo, o.hi
        if c > 0:
            lo = d.div(a, e) if a >= 0 else d.div(a, c)
            hi = u.div(b, c) if b >= 0 else u.div(b, e)
        else:
            lo = d.div(b, e) if b >= 0 else d.div(b, c)
            hi = u.div(a, c) if a >= 0 else u.div(a, e)
        return Interval._raw(lo, hi)

    def __rtruediv__(self, other) -> "Interval":
        return as_interval(other) / self

    def sqr(self) -> "Interval":
        d, u = _rounders()
        a, b = self.lo, self.hi
        if a >= 0:
            return Interval._raw(d.mul(a, a), u.mul(b, b))
        if b <= 0:
            return Interval._raw(d.mul(b, b), u.mul(a, a))
        return Interval._raw(mpfr(0), max(u.mul(a, a), u.mul(b, b)))

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        if k == 0:
            return Interval._raw(mpfr(1), mpfr(1))
        if k % 2 == 0:
            return self.sqr() ** (k // 2)
        result = self
        base = self.sqr()
        k //= 2
        while k:
            if k & 1:
                result = result * base
            base = base.sqr()
            k >>= 1
        return result

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval._raw(mpfr(0), max(_exact(self.lo, 'minus'), self.hi))

    def scale2(self, e: int) -> "Interval":
        """Exact multiplication by ``2**e``."""
        d, u = _rounders()
        return Interval._raw(d.mul_2exp(self.lo, e), u.mul_2exp(self.hi, e))

    def round_to(self, bits: int) -> "Interval":
        """Outward rounding of both endpoints to ``bits`` of precision."""
        d, u = _contexts(bits)
        return Interval._raw(mpfr(self.lo, bits, context=d), mpfr(self.hi, bits, context=u))

    # -- comparisons that are certain ---------------------------------------

    def certainly_lt(self, other) -> bool:
        return self.hi < as_interval(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > as_interval(other).hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0


def _endpoint_pair(x):
    if isinstance(x, Interval):
        return x.lo, x.hi
    d, u = _rounders()
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        z = mpz(x)
        return mpfr(z, 0, context=d), mpfr(z, 0, context=u)
    if isinstance(x, Fraction):
        q = mpq(x.numerator, x.denominator)
        return mpfr(q, 0, context=d), mpfr(q, 0, context=u)
    if isinstance(x, str):
        return _endpoint_pair(Fraction(x))
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite endpoint")
        v = mpfr(x, 53)
        return mpfr(v, 0, context=d), mpfr(v, 0, context=u)
    if isinstance(x, type(mpfr(0))):
        return mpfr(x, 0, context=d), mpfr(x, 0, context=u)
    if isinstance(x, type(mpq(0))):
        return mpfr(x, 0, context=d), mpfr(x, 0, context=u)
    raise TypeError(f"cannot build interval from {type(x).__name__}")


def as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(x)


def hull_all(items: Iterable[Interval]) -> Interval:
    items = list(items)
    return Interval._raw(min(i.lo for i in items), max(i.hi for i in items))


def interval_sum(items: Iterable[Interval]) -> Interval:
    """Outward sum that does not depend on how ``items`` were produced, only on their order."""
    total = Interval(0)
    for it in items:
        total = total + it
    return total


def format_endpoint(x: mpfr, direction: str, digits: int = 15) -> str:
    """Decimal string for ``x`` rounded outward (``'down'`` or ``'up'``) to ``digits`` significant digits."""
    if x == 0:
        return "0"
    q = Fraction(*mpq(x).as_integer_ratio())
    neg = q < 0
    a = -q if neg else q
    e = len(str(a.numerator)) - len(str(a.denominator))
    # the digit-count estimate is off by at most one
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    scale = Fraction(10) ** (digits - 1 - e)
    scaled = a * scale
    toward_larger_mag = (direction == "up") != neg
    n = math.ceil(scaled) if toward_larger_mag else math.floor(scaled)
    if n == 10**digits:
        n //= 10
        e += 1
    mant = str(n)
    s = f"{mant[0]}.{mant[1:]}e{e}" if (e < -5 or e >= digits) else _fixed(n, digits - 1 - e)
    return ("-" if neg else "") + s


def _fixed(n: int, decimals: int) -> str:
    if decimals <= 0:
        return str(n * 10 ** (-decimals))
    s = str(n).rjust(decimals + 1, "0")
    return f"{s[:-decimals]}.{s[-decimals:]}"


def format_interval(x: Interval, digits: int = 15) -> str:
    return f"[{format_endpoint(x.lo, 'down', digits)}, {format_endpoint(x.hi, 'up', digits)}]"


# ----------------------------------------------------------------------------
# Elementary functions
#
# Each point kernel returns an Interval at the *current* precision, computed
# inside a guarded precision and rounded outward. Monotone functions map an
# interval argument via its endpoints.
# ----------------------------------------------------------------------------


def _guarded(bits: int) -> int:
    return bits + GUARD_BITS


def _taylor_tail_bound(r_mag: mpfr, n: int, factor: int = 2) -> mpfr:
    """Upper bound on ``factor * r_mag**n / n!`` (rounded up)."""
    _, u = _rounders()
    t = mpfr(factor)
    for k in range(1, n + 1):
        t = u.div(u.mul(t, r_mag), k)
    return t


def _exp_point(x: mpfr) -> Interval:
    if x == 0:
        return Interval(1)
    target = get_precision()
    wp = _guarded(target)
    # halve the argument until it is tiny, then square back up
    e = gmpy2.frexp(x)[0]
    m = max(0, int(e) + 12)
    wp += m
    with working_precision(wp):
        r = Interval(x).scale2(-m)
        rmag = r.mag()
        term = Interval(1)
        total = Interval(1)
        k = 0
        eps = mpfr(2) ** (-wp - 4)
        while True:
            k += 1
            term = term * r / k
            total = total + term
            if term.mag() < eps and k > 2:
                break
        # Lagrange remainder: |r|^(k+1)/(k+1)! * e^|r|, and e^|r| < 2 for |r| < 1/4096
        tail = _taylor_tail_bound(rmag, k + 1, 2)
        total = total + Interval._raw(-tail, tail)
        if total.lo <= 0:
            total = Interval._raw(mpfr(0), total.hi)
        for _ in range(m):
            total = total.sqr()
    return total.round_to(target)


def exp(x) -> Interval:
    x = as_interval(x)
    lo = _exp_point(x.lo)
    hi = lo if x.is_point() else _exp_point(x.hi)
    return Interval._raw(max(lo.lo, mpfr(0)), hi.hi)


@lru_cache(maxsize=64)
def _atanh_inv(n: int, wp: int) -> tuple:
    """Enclosure of ``atanh(1/n)`` for integer ``n >= 2`` at precision ``wp`` (as endpoint pair)."""
    with working_precision(wp):
        z = Interval(1) / n
        z2 = z.sqr()
        power = z
        total = Interval(0)
        k = 0
        eps = mpfr(2) ** (-wp - 4)
        while True:
            term = power / (2 * k + 1)
            total = total + term
            if power.hi < eps:
                break
            power = power * z2
            k += 1
        # tail <= z^(2k+3)/((2k+3)(1-z^2))
        tail = (power * z2 / ((2 * k + 3) * (1 - z2))).hi
        total = total + Interval._raw(mpfr(0), tail)
        return total.lo, total.hi


def _ln2(wp: int) -> Interval:
    lo, hi = _atanh_inv(3, wp)
    return Interval._raw(lo, hi).scale2(1)


def _atanh_series(z: Interval) -> Interval:
    """``atanh(z)`` for an interval with ``|z| <= 0.2`` via the odd power series."""
    wp = get_precision()
    zmag = z.mag()
    z2 = z.sqr()
    power = z
    total = Interval(0)
    k = 0
    eps = mpfr(2) ** (-wp - 4)
    while True:
        total = total + power / (2 * k + 1)
        if power.mag() < eps:
            break
        power = power * z2
        k += 1
    # remaining terms bounded by |z|^(2k+3) / ((2k+3)(1 - |z|^2))
    _, u = _rounders()
    zm = mpfr(zmag)
    num = u.mul(power.mag(), u.mul(zm, zm))
    d = _rounders()[0]
    den = d.mul(mpfr(2 * k + 3), d.sub(1, u.mul(zm, zm)))
    tail = u.div(num, den)
    return total + Interval._raw(-tail, tail)


def _log_point(x: mpfr) -> Interval:
    if x <= 0:
        raise DomainError("log of a non-positive number")
    target = get_precision()
    wp = _guarded(target)
    e, mant = _exact_context(max(x.precision, 2)).frexp(x)
    # x = mant * 2^e with mant in [1/2, 1); move mant into [1/sqrt2, sqrt2)
    if mant < mpfr("0.7071067811865476"):
        mant = _exact(mant, 'mul_2exp', 1)
        e -= 1
    with working_precision(wp):
        y = Interval(mant)
        z = (y - 1) / (y + 1)
        lg = _atanh_series(z).scale2(1)
        if e:
            lg = lg + _ln2(wp) * int(e)
    return lg.round_to(target)


def log(x) -> Interval:
    x = as_interval(x)
    if x.lo <= 0:
        raise DomainError(f"log requires a positive argument, got {x!r}")
    lo = _log_point(x.lo)
    hi = lo if x.is_point() else _log_point(x.hi)
    return Interval._raw(lo.lo, hi.hi)


def sqrt(x) -> Interval:
    x = as_interval(x)
    if x.lo < 0:
        raise DomainError(f"sqrt requires a non-negative argument, got {x!r}")
    d, u = _rounders()
    return Interval._raw(d.sqrt(x.lo), u.sqrt(x.hi))


@lru_cache(maxsize=64)
def _atan_inv(n: int, wp: int) -> tuple:
    """Enclosure of ``atan(1/n)`` via its alternating series (tail below the next term)."""
    with working_precision(wp):
        z = Interval(1) / n
        z2 = z.sqr()
        power = z
        total = Interval(0)
        k = 0
        eps = mpfr(2) ** (-wp - 4)
        while True:
            term = power / (2 * k + 1)
            total = total + term if k % 2 == 0 else total - term
            power = power * z2
            k += 1
            if power.hi < eps:
                break
        nxt = (power / (2 * k + 1)).hi
        total = total + Interval._raw(-nxt, nxt)
        return total.lo, total.hi


@lru_cache(maxsize=64)
def _pi_pair(bits: int) -> tuple:
    wp = _guarded(bits)
    with working_precision(wp):
        a = Interval._raw(*_atan_inv(5, wp))
        b = Interval._raw(*_atan_inv(239, wp))
        p = a * 16 - b * 4
        r = p.round_to(bits)
    return r.lo, r.hi


def pi_const() -> Interval:
    """Enclosure of pi (Machin's formula) at the working precision."""
    return Interval._raw(*_pi_pair(get_precision()))


def _cos_sin_reduced(r: Interval, want_sin: bool) -> Interval:
    """Taylor series of cos or sin for an interval ``r`` with ``|r| <= 4``."""
    wp = get_precision()
    r2 = r.sqr()
    term = r if want_sin else Interval(1)
    total = term
    k = 1 if want_sin else 0
    eps = mpfr(2) ** (-wp - 4)
    j = 0
    while True:
        j += 1
        term = -(term * r2) / ((k + 1) * (k + 2))
        k += 2
        total = total + term
        if term.mag() < eps and k > 4:
            break
    # Lagrange remainder with all derivatives bounded by 1
    tail = _taylor_tail_bound(r.mag(), k + 2, 1)
    total = total + Interval._raw(-tail, tail)
    return total.intersect(Interval(-1, 1)) if total.lo < -1 or total.hi > 1 else total


def _trig_point(x: mpfr, want_sin: bool) -> Interval:
    target = get_precision()
    wp = _guarded(target) + max(0, int(gmpy2.frexp(x)[0]) if x != 0 else 0)
    with working_precision(wp):
        two_pi = pi_const().scale2(1)
        k = round(float(x) / (2 * math.pi))
        r = Interval(x) - two_pi * k
        val = _cos_sin_reduced(r, want_sin)
    return val.round_to(target)


def _contains_integer(t: Interval) -> bool:
    return math.floor(t.hi) >= math.ceil(t.lo)


def cos(x) -> Interval:
    x = as_interval(x)
    p = pi_const()
    if x.width() >= 2 * p.lo:
        return Interval(-1, 1)
    lo = _trig_point(x.lo, False)
    if x.is_point():
        return lo
    hi = _trig_point(x.hi, False)
    res = lo.hull(hi)
    two_pi = p.scale2(1)
    # cos peaks at 2k*pi and bottoms out at (2k+1)*pi
    if _contains_integer(_widen_div(x, two_pi)):
        res = Interval._raw(res.lo, mpfr(1))
    if _contains_integer(_widen_div(x - p, two_pi)):
        res = Interval._raw(mpfr(-1), res.hi)
    return res


def _widen_div(x: Interval, y: Interval) -> Interval:
    """Hull of ``x / t`` over every ``t`` in the positive interval ``y``."""
    cands = [x.lo / Interval._raw(y.lo, y.lo), x.lo / Interval._raw(y.hi, y.hi),
             x.hi / Interval._raw(y.lo, y.lo), x.hi / Interval._raw(y.hi, y.hi)]
    return hull_all(cands)


def sin(x) -> Interval:
    x = as_interval(x)
    if x.is_point():
        return _trig_point(x.lo, True)
    p = pi_const()
    # sin(x) = cos(x - pi/2)
    return cos(x - p.scale2(-1))


def sinh(x) -> Interval:
    x = as_interval(x)

    def point(a: mpfr) -> Interval:
        target = get_precision()
        with working_precision(_guarded(target)):
            if abs(a) < 0.5:
                r = Interval(a)
                r2 = r.sqr()
                term = r
                total = r
                k = 1
                eps = mpfr(2) ** (-get_precision() - 4)
                while True:
                    term = term * r2 / ((k + 1) * (k + 2))
                    k += 2
                    total = total + term
                    if term.mag() < eps:
                        break
                # remainder <= cosh(|a|) |a|^(k+2)/(k+2)! <= 2 |a|^(k+2)/(k+2)!
                tail = _taylor_tail_bound(r.mag(), k + 2, 2)
                val = total + Interval._raw(-tail, tail)
            else:
                ea = exp(a)
                val = (ea - 1 / ea).scale2(-1)
        return val.round_to(target)

    lo = point(x.lo)
    hi = lo if x.is_point() else point(x.hi)
    return Interval._raw(lo.lo, hi.hi)


def cosh(x) -> Interval:
    x = as_interval(x)
    target = get_precision()
    with working_precision(_guarded(target)):
        ea = exp(abs(x))
        val = (ea + 1 / ea).scale2(-1)
    return val.round_to(target)


def tanh(x) -> Interval:
    """tanh via ``1 - 2/(exp(2x)+1)``, which stays accurate for large arguments."""
    x = as_interval(x)

    def point(a: mpfr) -> Interval:
        target = get_precision()
        neg = a < 0
        with working_precision(_guarded(target)):
            b = _exact(a, 'minus') if neg else a
            if b < 0.25:
                # small argument: tanh = sinh/cosh avoids cancellation in 1 - 2/(e^{2b}+1)
                val = sinh(b) / cosh(b)
            else:
                val = 1 - 2 / (exp(Interval(b).scale2(1)) + 1)
            if neg:
                val = -val
        val = val.round_to(target)
        return Interval._raw(max(val.lo, mpfr(-1)), min(val.hi, mpfr(1)))

    lo = point(x.lo)
    hi = lo if x.is_point() else point(x.hi)
    return Interval._raw(lo.lo, hi.hi)


def arccosh(x) -> Interval:
    x = as_interval(x)
    if x.lo < 1:
        raise DomainError(f"arccosh requires arguments >= 1, got {x!r}")

    def point(a: mpfr) -> Interval:
        target = get_precision()
        with working_precision(_guarded(target)):
            t = Interval(a)
            s = t.sqr() - 1
            if s.lo < 0:
                s = Interval._raw(mpfr(0), s.hi)  # a >= 1 exactly, so a^2 - 1 >= 0
            val = log(t + sqrt(s))
        return val.round_to(target)

    lo = point(x.lo)
    hi = lo if x.is_point() else point(x.hi)
    return Interval._raw(max(lo.lo, mpfr(0)), hi.hi)


def arcsinh(x) -> Interval:
    x = as_interval(x)

    def point(a: mpfr) -> Interval:
        if a == 0:
            return Interval(0)
        target = get_precision()
        neg = a < 0
        with working_precision(_guarded(target) + 16):
            t = Interval(_exact(a, 'minus') if neg else a)
            if t.hi < 0.4:
                # log(1 + w) = 2 atanh(w / (2 + w)) keeps full relative accuracy near zero
                t2 = t.sqr()
                w = t + t2 / (1 + sqrt(t2 + 1))
                val = _atanh_series(w / (2 + w)).scale2(1)
            else:
                val = log(t + sqrt(t.sqr() + 1))
            if neg:
                val = -val
        return val.round_to(target)

    lo = point(x.lo)
    hi = lo if x.is_point() else point(x.hi)
    return Interval._raw(lo.lo, hi.hi)


ELEMENTARY = {
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "cos": cos,
    "sin": sin,
    "arccosh": arccosh,
    "arcsinh": arcsinh,
}


def elem(x, fn: str) -> Interval:
    """Apply a named elementary function (``pi_const`` ignores ``x``)."""
    if fn == "pi_const":
        return pi_const()
    try:
        f = ELEMENTARY[fn]
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}") from None
    return f(x)


def arith(a, b, op: str) -> Interval:
    a, b = as_interval(a), as_interval(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operator {op!r}")


# ----------------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------------


def interval_coeffs(p: RationalPolynomial) -> tuple[Interval, ...]:
    """Outward-rounded interval coefficients of ``p`` (cached per precision)."""
    key = ("ivcoeffs", get_precision())
    cached = p._cache.get(key)
    if cached is None:
        cached = tuple(Interval(c) for c in p.coeffs)
        p._cache[key] = cached
    return cached


def eval_poly_interval(p: RationalPolynomial, x) -> Interval:
    """Enclosure of ``{p(t) : t in x}`` by plain Horner evaluation."""
    x = as_interval(x)
    cs = interval_coeffs(p)
    if not cs:
        return Interval(0)
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * x + c
    return acc
