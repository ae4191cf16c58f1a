"""Geodesic length tables and disk-eigenvalue thresholds.

Lengths are kept as closed-form expressions and turned into intervals on
demand, so raising the working precision tightens every constant without
touching the tables.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from . import interval as iv
from .exactpoly import to_rational
from .interval import Interval, get_precision

Value = Union[Fraction, Interval]

_FUNCS = {
    "sqrt": iv.sqrt,
    "cos": iv.cos,
    "sin": iv.sin,
    "arccosh": iv.arccosh,
    "arcsinh": iv.arcsinh,
}


class ExpressionError(ValueError):
    """A length expression is outside the supported grammar."""


def _lift(x: Value) -> Interval:
    return x if isinstance(x, Interval) else Interval(x)


def _eval_node(node: ast.AST, src: str) -> Value:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, src)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ExpressionError(f"unsupported literal {node.value!r}")
        # read decimals from the source text so 0.1 means exactly 1/10
        text = ast.get_source_segment(src, node) or repr(node.value)
        try:
            return Fraction(text)
        except ValueError:
            raise ExpressionError(f"cannot read number {text!r}") from None
    if isinstance(node, ast.Name):
        if node.id == "pi":
            return iv.pi_const()
        raise ExpressionError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand, src)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ExpressionError("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, src)
        if isinstance(node.op, ast.Pow):
            right = _eval_node(node.right, src)
            if not isinstance(right, Fraction) or right.denominator != 1 or right < 0:
                raise ExpressionError("exponents must be non-negative integers")
            k = int(right)
            return left**k if isinstance(left, Fraction) else left**k
        right = _eval_node(node.right, src)
        if isinstance(left, Fraction) and isinstance(right, Fraction):
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right == 0:
                    raise ExpressionError("division by zero")
                return left / right
        a, b = _lift(left), _lift(right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
        raise ExpressionError("unsupported binary operator")
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
            raise ExpressionError(f"unknown function in {ast.get_source_segment(src, node)!r}")
        if len(node.args) != 1 or node.keywords:
            raise ExpressionError(f"{node.func.id} takes exactly one argument")
        arg = _lift(_eval_node(node.args[0], src))
        try:
            return _FUNCS[node.func.id](arg)
        except iv.DomainError as exc:
            raise ExpressionError(str(exc)) from None
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_expression(text: str) -> ast.Expression:
    src = text.replace("^", "**")
    try:
        return ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None


def evaluate(text: str) -> Interval:
    """Enclose the value of a closed-form expression at the working precision."""
    src = text.replace("^", "**")
    return _lift(_eval_node(parse_expression(text), src))


# ----------------------------------------------------------------------------
# Geodesic sets
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicEntry:
    expr: str
    multiplicity: int
    label: str = ""

    def __post_init__(self):
        if int(self.multiplicity) < 1:
            raise ValueError("multiplicities must be at least 1")
        object.__setattr__(self, "multiplicity", int(self.multiplicity))
        parse_expression(self.expr)

    def length(self) -> Interval:
        return _length_cached(self.expr, get_precision())


@lru_cache(maxsize=256)
def _length_cached(expr: str, bits: int) -> Interval:
    return evaluate(expr)


@dataclass(frozen=True)
class GeodesicSet:
    surface: str
    entries: tuple[GeodesicEntry, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.surface not in ("klein", "bolza", "custom"):
            raise ValueError(f"unknown surface {self.surface!r}")
        entries = tuple(self.entries)
        for e in entries:
            if not e.length().lo > 0:
                raise ValueError(f"length {e.expr!r} is not provably positive")
        entries = tuple(sorted(entries, key=lambda e: float(e.length().mid())))
        object.__setattr__(self, "entries", entries)

    def enclosures(self) -> list[tuple[Interval, int]]:
        return [(e.length(), e.multiplicity) for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def union(self, other: "GeodesicSet") -> "GeodesicSet":
        return GeodesicSet("custom", self.entries + other.entries)

    def systole(self) -> Interval:
        if not self.entries:
            raise ValueError("empty geodesic set has no systole")
        return self.entries[0].length()


KLEIN_ENTRIES = (
    GeodesicEntry("8*arccosh(1/2 + cos(2*pi/7))", 21, "systole"),
    GeodesicEntry("6*arccosh(8*cos(pi/7)^4 - 6*cos(pi/7)^2 + 1)", 28, "second shortest"),
)

BOLZA_ENTRIES = (
    GeodesicEntry("2*arccosh(1 + sqrt(2))", 12, "l1 (systole)"),
    GeodesicEntry("2*arccosh(3 + 2*sqrt(2))", 12, "l2"),
    GeodesicEntry("2*arccosh(5 + 3*sqrt(2))", 24, "l3"),
)


def builtin_geodesics(surface: str) -> GeodesicSet:
    if surface == "klein":
        return GeodesicSet("klein", KLEIN_ENTRIES)
    if surface == "bolza":
        return GeodesicSet("bolza", BOLZA_ENTRIES)
    raise ValueError(f"no built-in geodesic table for {surface!r}")


def bolza_l3_below_twice_systole() -> tuple[bool, Interval, Interval]:
    """Certify l3 < 2 l1 on the Bolza surface (so l3 is primitive and its own class)."""
    l1 = BOLZA_ENTRIES[0].length()
    l3 = BOLZA_ENTRIES[2].length()
    twice = l1.scale2(1)
    return l3.hi < twice.lo, l3, twice


# ----------------------------------------------------------------------------
# Thresholds
# ----------------------------------------------------------------------------

QUARTER = Fraction(1, 4)


def disk_radius_from_area(area) -> Interval:
    """Radius 2 arcsinh(sqrt(A / 4 pi)) of the hyperbolic disk of area A."""
    A = _lift(area if isinstance(area, Interval) else to_rational(area))
    if not A.lo > 0:
        raise ValueError("area must be positive")
    return iv.arcsinh(iv.sqrt(A / iv.pi_const().scale2(2))).scale2(1)


def disk_area(genus_factor) -> Interval:
    """Area 2 pi k for a rational k (k = 2(g-1) gives the disk D, k = g-1 the disk E)."""
    return iv.pi_const().scale2(1) * to_rational(genus_factor)


@dataclass(frozen=True)
class DiskBounds:
    artamoshin: Interval
    savo: Interval
    gage: Interval

    def lower(self) -> Interval:
        """The better of the two certified lower bounds (taken endpoint-wise)."""
        a, s = self.artamoshin, self.savo
        return Interval._raw(max(a.lo, s.lo), max(a.hi, s.hi))


def disk_lambda0_bounds(R) -> DiskBounds:
    """Enclosures of the Artamoshin and Savo lower bounds and the Gage upper bound on lambda_0(D_R)."""
    R = _lift(R if isinstance(R, Interval) else to_rational(R))
    if not R.lo > 0:
        raise ValueError("radius must be positive")
    pi = iv.pi_const()
    pi2 = pi.sqr()
    art = QUARTER + (pi / R.scale2(1)).sqr()
    savo = QUARTER + pi2 / R.sqr() - pi2.scale2(2) / R**3
    gage = QUARTER + pi2 / R.sqr() - 1 / iv.sinh(R).sqr().scale2(2)
    return DiskBounds(art, savo, gage)


@dataclass(frozen=True)
class Thresholds:
    genus: int
    delta_g: Interval
    eps_g: Interval
    lambda_caps: tuple[tuple[str, Interval], ...]
    radius_D: Interval
    radius_E: Interval

    @property
    def quarter_plus_delta(self) -> Interval:
        return self.delta_g + QUARTER

    @property
    def quarter_plus_eps(self) -> Interval:
        return self.eps_g + QUARTER

    def cap(self, name: str) -> Interval:
        for n, val in self.lambda_caps:
            if n == name:
                return val
        raise KeyError(name)


def thresholds(genus: int) -> Thresholds:
    """Certified lower bounds delta_g, eps_g (so lambda_0(D) >= 1/4 + delta_g) and eigenvalue caps.

    D and E are hyperbolic disks of areas 4 pi (g-1) and 2 pi (g-1).
    """
    if genus < 2:
        raise ValueError("genus must be at least 2")
    RD = disk_radius_from_area(disk_area(2 * (genus - 1)))
    RE = disk_radius_from_area(disk_area(genus - 1))
    delta = disk_lambda0_bounds(RD).lower() - QUARTER
    eps = disk_lambda0_bounds(RE).lower() - QUARTER
    caps = [("cheng_gage", cheng_gage_cap(genus))]
    if genus == 2:
        caps.append(("yang_yau", yang_yau_cap(2)))
    if genus == 3:
        caps.append(("ros", ros_cap()))
    return Thresholds(genus, delta, eps, tuple(caps), RD, RE)


def kaleidoscopic_threshold(p: int, q: int, r: int) -> Interval:
    """Lower bound 1/4 + pi^2 / (16 arcsinh^2(sqrt((r/2)(1 - 1/p - 1/q - 1/r)))) for a (p,q,r) tiling."""
    chi = _hyperbolic_defect(p, q, r)
    arg = iv.sqrt(Interval(Fraction(r, 2) * chi))
    s = iv.arcsinh(arg)
    return QUARTER + iv.pi_const().sqr() / (s.sqr() * 16)


def _hyperbolic_defect(p: int, q: int, r: int) -> Fraction:
    if not (2 <= p <= q <= r):
        raise ValueError("need 2 <= p <= q <= r")
    chi = 1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)
    if chi <= 0:
        raise ValueError(f"({p},{q},{r}) is not a hyperbolic triple")
    return chi


def kaleidoscopic_index_bound(p: int, q: int, r: int, genus: int) -> Fraction:
    """area(S)/A - 2 with A = 2 pi r (1 - 1/p - 1/q - 1/r) and area(S) = 4 pi (g-1)."""
    chi = _hyperbolic_defect(p, q, r)
    return Fraction(2 * (genus - 1)) / (r * chi) - 2


def cheng_gage_cap(g: int) -> Interval:
    """1/4 + pi^2 / arcsinh(sqrt(g-1))^2 - 1/(g-1)."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    s = iv.arcsinh(iv.sqrt(Interval(g - 1)))
    return QUARTER + iv.pi_const().sqr() / s.sqr() - Fraction(1, g - 1)


def ros_cap() -> Interval:
    """2(4 - sqrt 7), an external upper bound on lambda_1 in genus 3."""
    return (4 - iv.sqrt(Interval(7))).scale2(1)


def yang_yau_cap(g: int) -> Interval:
    """2 floor((g+3)/2) / (g-1), an external upper bound on lambda_1 in genus g."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    return Interval(Fraction(2 * ((g + 3) // 2), g - 1))


def klein_initial_bound() -> Interval:
    """1/4 + (pi / (4 arcsinh sqrt 2))^2, the disk bound 1/4 + delta_3."""
    return QUARTER + (iv.pi_const() / iv.arcsinh(iv.sqrt(Interval(2))).scale2(2)).sqr()


__all__ = [
    "ExpressionError",
    "evaluate",
    "GeodesicEntry",
    "GeodesicSet",
    "builtin_geodesics",
    "bolza_l3_below_twice_systole",
    "disk_radius_from_area",
    "disk_area",
    "DiskBounds",
    "disk_lambda0_bounds",
    "Thresholds",
    "thresholds",
    "kaleidoscopic_threshold",
    "kaleidoscopic_index_bound",
    "cheng_gage_cap",
    "ros_cap",
    "yang_yau_cap",
    "klein_initial_bound",
]
