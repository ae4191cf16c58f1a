"""Exact univariate polynomials over the rationals.

Everything here is zero-error: coefficients are :class:`fractions.Fraction`
and every operation (including root counting with Sturm sequences) is
performed in exact arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

NEG_INF = -math.inf
POS_INF = math.inf


def to_rational(value: RationalLike) -> Fraction:
    """Parse ``value`` as an exact rational.

    Decimal literals are exact: ``"42.26"`` becomes ``2113/50``. Floats are
    rejected because their binary expansion is rarely what was meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("_", "")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


class RationalPolynomial:
    """Dense polynomial with rational coefficients, ``coeffs[i]`` multiplying ``y**i``.

    Instances are immutable and hashable. Trailing zero coefficients are
    trimmed, so the zero polynomial has an empty coefficient tuple and
    degree ``-1``.
    """

    __slots__ = ("coeffs", "_hash", "_cache")

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "RationalPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], lead: RationalLike = 1) -> "RationalPolynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms).replace("+ -", "- ")

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([to_rational(other)])

    def __add__(self, other) -> "RationalPolynomial":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return RationalPolynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "RationalPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            c = to_rational(other)
            return RationalPolynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            raise TypeError("use divmod() for polynomial division")
        c = to_rational(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return RationalPolynomial(a / c for a in self.coeffs)

    def __pow__(self, k: int) -> "RationalPolynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = RationalPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "RationalPolynomial"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        inv_lead = 1 / other.lead
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] * inv_lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dd])

    def __mod__(self, other) -> "RationalPolynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other) -> "RationalPolynomial":
        return divmod(self, other)[0]

    # -- calculus / evaluation ----------------------------------------------

    def __call__(self, y: RationalLike) -> Fraction:
        return eval_rational(self, y)

    def derivative(self, k: int = 1) -> "RationalPolynomial":
        p = self
        for _ in range(k):
            p = derivative(p)
        return p

    def compose_square(self) -> "RationalPolynomial":
        """Return ``p(x**2)`` as a polynomial in ``x``."""
        out: list[Fraction] = []
        for c in self.coeffs:
            out.extend([c, Fraction(0)])
        return RationalPolynomial(out)

    def shift(self, c: RationalLike) -> "RationalPolynomial":
        """Return ``p(y + c)`` (exact Taylor shift)."""
        c = to_rational(c)
        a = list(self.coeffs)
        n = len(a)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        return RationalPolynomial(a)

    def abs_coeffs(self) -> "RationalPolynomial":
        """Coefficient-wise absolute value; dominates ``|p|`` on ``[0, inf)``."""
        return RationalPolynomial(abs(c) for c in self.coeffs)


def derivative(p: RationalPolynomial) -> RationalPolynomial:
    """Exact formal derivative."""
    return RationalPolynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)


def eval_rational(p: RationalPolynomial, y: RationalLike) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    y = to_rational(y)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * y + c
    return acc


def sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@lru_cache(maxsize=None)
def laguerre_half(n: int) -> RationalPolynomial:
    """Generalized Laguerre polynomial ``L_n^{(-1/2)}`` with exact coefficients.

    Built from the three-term recurrence
    ``(k+1) L_{k+1} = (2k + 1 + alpha - y) L_k - (k + alpha) L_{k-1}``.
    """
    if n < 0:
        raise ValueError("Laguerre index must be non-negative")
    alpha = Fraction(-1, 2)
    if n == 0:
        return RationalPolynomial([1])
    if n == 1:
        return RationalPolynomial([1 + alpha, -1])
    k = n - 1
    lk, lkm1 = laguerre_half(k), laguerre_half(k - 1)
    nxt = RationalPolynomial([2 * k + 1 + alpha, -1]) * lk - lkm1 * (k + alpha)
    return nxt / (k + 1)


# -- Sturm sequences ----------------------------------------------------------


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Canonical Sturm sequence ``p, p', -rem(p, p'), ...`` with exact remainders."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p, derivative(p)]
    while not seq[-1].is_zero():
        seq.append(_primitive(-(seq[-2] % seq[-1])))
    seq.pop()
    return seq


def _primitive(p: RationalPolynomial) -> RationalPolynomial:
    """Scale by a positive rational to coprime integer coefficients (signs are unchanged)."""
    if p.is_zero():
        return p
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    g = 0
    for n in ints:
        g = math.gcd(g, n)
    return RationalPolynomial(Fraction(n // g) for n in ints)


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    if p.degree <= 0:
        return p
    g = sturm_sequence(p)[-1]
    return p // g if g.degree > 0 else p


def _sign_at(p: RationalPolynomial, x) -> int:
    if x == POS_INF:
        return sign(p.lead)
    if x == NEG_INF:
        return sign(p.lead) * (-1) ** (p.degree % 2)
    return sign(eval_rational(p, x))


def _variations(seq: Sequence[RationalPolynomial], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def deflate(p: RationalPolynomial, root: Fraction) -> tuple[RationalPolynomial, int]:
    """Divide out ``(y - root)`` as often as possible; returns (quotient, multiplicity)."""
    mult = 0
    lin = RationalPolynomial([-root, 1])
    while not p.is_zero() and eval_rational(p, root) == 0:
        p = divmod(p, lin)[0]
        mult += 1
    return p, mult


def root_multiplicity(p: RationalPolynomial, root: RationalLike) -> int:
    return deflate(p, to_rational(root))[1]


def _normalize_endpoint(x):
    if x is None:
        return None
    if isinstance(x, float):
        if x in (POS_INF, NEG_INF):
            return x
        raise TypeError("finite endpoints must be exact rationals")
    return to_rational(x)


def sturm_count(p: RationalPolynomial, lo=NEG_INF, hi=POS_INF) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``lo``/``hi`` are exact rationals or ``-inf``/``+inf``. Roots sitting
    exactly on an endpoint are divided out before the sign-variation count,
    so the count is exact regardless of where the endpoints fall.
    """
    if p.is_zero():
        raise ValueError("cannot count roots of the zero polynomial")
    lo = NEG_INF if lo is None else _normalize_endpoint(lo)
    hi = POS_INF if hi is None else _normalize_endpoint(hi)
    if not lo < hi:
        return 0
    q = p
    on_hi = 0
    if isinstance(lo, Fraction):
        q, _ = deflate(q, lo)
    if isinstance(hi, Fraction):
        q, m = deflate(q, hi)
        on_hi = 1 if m else 0
    if q.degree <= 0:
        return on_hi
    seq = sturm_sequence(q)
    return _variations(seq, lo) - _variations(seq, hi) + on_hi


def count_roots_open(p: RationalPolynomial, lo, hi) -> int:
    """Distinct real roots in the open interval ``(lo, hi)``."""
    n = sturm_count(p, lo, hi)
    if isinstance(hi, (int, Fraction, str)) and eval_rational(p, hi) == 0:
        n -= 1
    return n


def isolate_roots(p: RationalPolynomial, lo, hi, max_width: Fraction = Fraction(1, 2**20)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals ``(a, b]`` each holding exactly one distinct root in ``(lo, hi]``.

    Used for witnesses; endpoints must be finite.
    """
    lo, hi = to_rational(lo), to_rational(hi)
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    var = {}

    def V(x):
        if x not in var:
            var[x] = _variations(seq, x)
        return var[x]

    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = V(a) - V(b)
        if n == 0:
            continue
        if n == 1 and b - a <= max_width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)
