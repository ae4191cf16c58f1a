import random
import zlib
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from selbergcert import interval as iv
from selbergcert.exactpoly import RationalPolynomial
from selbergcert.interval import Interval, DomainError, arith, elem, eval_poly_interval, format_endpoint
from selbergcert.testfn import build_test_function

from helpers import exact, matches_printed



def mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def encloses(x: Interval, value) -> bool:
    return mp(exact(x.lo)) <= value <= mp(exact(x.hi))


def test_arith_examples():
    assert arith(Interval(1, 2), Interval(3, 4), "+").to_floats() == (4.0, 6.0)
    assert arith(Interval(-1, 1), Interval(-1, 1), "*").to_floats() == (-1.0, 1.0)
    third = arith(Interval(1), Interval(3), "/")
    assert exact(third.lo) < Fraction(1, 3) < exact(third.hi)
    with pytest.raises(ZeroDivisionError):
        arith(Interval(1), Interval(-1, 1), "/")


def test_elementary_examples():
    assert Interval(1) in elem(Interval(0), "exp")
    assert elem(Interval(1), "arccosh").contains(0)
    sys_k = iv.arccosh(Fraction(1, 2) + iv.cos(iv.pi_const() * Fraction(2, 7))) * 8
    assert matches_printed(sys_k, "3.935946")


def test_domain_errors():
    with pytest.raises(DomainError):
        iv.sqrt(Interval(-1, 2))
    with pytest.raises(DomainError):
        iv.arccosh(Interval(Fraction(1, 2), 2))
    with pytest.raises(DomainError):
        iv.log(Interval(0, 1))


def test_poly_examples(certificates):
    y = RationalPolynomial([0, 1])
    assert eval_poly_interval(y, Interval(2, 3)).to_floats() == (2.0, 3.0)
    sq = eval_poly_interval(y * y, Interval(-1, 1))
    assert sq.contains(0) and sq.contains(1)  # plain Horner may overestimate to [-1, 1]
    v = build_test_function(certificates["lem_f0"].spec).v
    assert eval_poly_interval(v, Interval(Fraction("0.79"))).contains(1)


def test_pi_digits():
    assert encloses(iv.pi_const(), mpmath.pi)
    with iv.working_precision(512):
        p = iv.pi_const()
        assert encloses(p, mpmath.pi) and float(p.width()) < 1e-150


ORACLES = {
    "exp": (iv.exp, mpmath.exp, (-60, 60)),
    "log": (iv.log, mpmath.log, (1e-6, 1e6)),
    "sqrt": (iv.sqrt, mpmath.sqrt, (0, 1e4)),
    "cos": (iv.cos, mpmath.cos, (-40, 40)),
    "sin": (iv.sin, mpmath.sin, (-40, 40)),
    "sinh": (iv.sinh, mpmath.sinh, (-40, 40)),
    "cosh": (iv.cosh, mpmath.cosh, (-40, 40)),
    "tanh": (iv.tanh, mpmath.tanh, (-40, 40)),
    "arcsinh": (iv.arcsinh, mpmath.asinh, (-1e3, 1e3)),
    "arccosh": (iv.arccosh, mpmath.acosh, (1, 1e3)),
}


@pytest.mark.parametrize("name", sorted(ORACLES))
def test_point_sampling_containment(name):
    """10^3 random points inside random intervals land inside the interval image."""
    f, oracle, (lo, hi) = ORACLES[name]
    rng = random.Random(zlib.crc32(name.encode()))
    for k in range(1000):
        if k % 4 == 0:  # small magnitudes exercise the near-zero branches
            a = rng.uniform(lo, hi) * 10 ** -rng.randint(0, 25)
            a = min(max(a, lo), hi)
        else:
            a = rng.uniform(lo, hi)
        w = rng.choice([0.0, 0.0, 1e-12, 1e-6, 1e-2, 0.5]) * max(1.0, abs(a))
        b = min(a + w, hi)
        X = Interval(Fraction(a), Fraction(b))
        Y = f(X)
        t = Fraction(a) + (Fraction(b) - Fraction(a)) * Fraction(rng.randint(0, 1000), 1000)
        assert encloses(Y, oracle(mp(t))), (name, a, b, t, Y)


@pytest.mark.parametrize("name", sorted(ORACLES))
def test_point_enclosures_are_tight(name):
    f, oracle, (lo, hi) = ORACLES[name]
    x = Fraction(lo + (hi - lo) / 3).limit_denominator(1000)
    Y = f(Interval(x))
    scale = max(abs(oracle(mp(x))), mpmath.mpf(1))
    assert mp(exact(Y.width())) / scale < mpmath.mpf(2) ** -100


small = st.fractions(min_value=-20, max_value=20, max_denominator=64)


@given(small, small, small, small, st.sampled_from(sorted(ORACLES)))
def test_inclusion_monotonicity(a, b, c, d, name):
    f, _, (lo, hi) = ORACLES[name]
    inner_lo, inner_hi = sorted((a, b))
    outer_lo, outer_hi = min(inner_lo, c), max(inner_hi, d)
    if outer_lo < lo or outer_hi > hi or (name == "log" and outer_lo <= 0):
        return
    inner = f(Interval(inner_lo, inner_hi))
    outer = f(Interval(outer_lo, outer_hi))
    assert outer.lo <= inner.lo and inner.hi <= outer.hi


@given(small, small, st.sampled_from(sorted(ORACLES)))
def test_subdivision_hull_contains_pieces(a, b, name):
    f, _, (lo, hi) = ORACLES[name]
    a, b = sorted((a, b))
    if a < lo or b > hi or (name == "log" and a <= 0):
        return
    m = (a + b) / 2
    whole = f(Interval(a, b))
    for piece in (f(Interval(a, m)), f(Interval(m, b))):
        assert whole.hull(piece).lo == whole.lo or whole.lo <= piece.lo
        assert whole.lo <= piece.hi and piece.lo <= whole.hi


@given(small, small, small, small, st.sampled_from("+-*/"))
def test_arith_contains_exact_result(a, b, c, d, op):
    X, Y = Interval(min(a, b), max(a, b)), Interval(min(c, d), max(c, d))
    if op == "/" and Y.contains_zero():
        return
    R = arith(X, Y, op)
    x, y = min(a, b), max(c, d)
    value = {"+": x + y, "-": x - y, "*": x * y, "/": x / y if y else None}[op]
    assert value is None or R.contains(value)


def test_format_endpoint_rounds_outward():
    x = Interval(Fraction(2, 3))
    lo, hi = format_endpoint(x.lo, "down", 15), format_endpoint(x.hi, "up", 15)
    assert Fraction(lo) < Fraction(2, 3) < Fraction(hi)
    assert lo == "0.666666666666666" and hi == "0.666666666666667"
    assert format_endpoint(Interval(Fraction("9.9999999999999999")).hi, "up", 15) == "10.0000000000000"


def test_precision_is_configurable():
    with iv.working_precision(64):
        w64 = float(iv.exp(Interval(1)).width())
    with iv.working_precision(256):
        w256 = float(iv.exp(Interval(1)).width())
    assert w256 < w64 < 1e-15
