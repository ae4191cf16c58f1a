from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from selbergcert.exactpoly import RationalPolynomial
from selbergcert.interval import Interval, exp
from selbergcert.signcheck import (
    NONNEGATIVE,
    NONPOSITIVE,
    parse_sign,
    verify_fhat_max_decreasing,
    verify_fhat_min,
    verify_one_signed_ray,
    verify_tail_sign,
)
from selbergcert.testfn import ConstraintSpec, build_test_function, gaussian_spec, pair_from_coefficients

P = RationalPolynomial
SQ = P([-3, 1]) ** 2  # (y - 3)^2


def test_parse_sign_spellings():
    assert parse_sign("<=0") == parse_sign("≤0") == NONPOSITIVE
    assert parse_sign(">= 0") == NONNEGATIVE
    with pytest.raises(ValueError):
        parse_sign("=0")


def test_ray_examples():
    assert verify_one_signed_ray(-SQ, 0, "<=0", [3]).holds
    bad = verify_one_signed_ray(SQ, 0, "<=0", [3])
    assert not bad.holds and "p(y0) > 0" in bad.witness
    with pytest.raises(ValueError):
        verify_one_signed_ray(P([]), 0, "<=0")


def test_ray_rejects_undeclared_or_fake_double_zeros():
    p = -(P([-3, 1]) ** 2) * P([-5, 1]) ** 2
    assert not verify_one_signed_ray(p, 0, "<=0", [3]).holds  # 5 not declared
    assert not verify_one_signed_ray(-SQ, 0, "<=0", [3, 4]).holds  # 4 is no root
    simple = P([-3, 1]) * P([1, 1])  # (y-3)(y+1) changes sign at 3
    assert not verify_one_signed_ray(simple, 0, ">=0", [3]).holds


def test_ray_requires_nonvanishing_second_derivative():
    quartic = -(P([-3, 1]) ** 4)
    v = verify_one_signed_ray(quartic, 0, "<=0", [3])
    assert not v.holds and "second derivative" in v.witness


def test_less6_u_on_the_systole_ray(certificates):
    cert = certificates["klein_less6"]
    pair = build_test_function(cert.spec)
    v = verify_one_signed_ray(pair.u, Fraction("3.9359"), "<=0", cert.spec.u_double_zeros)
    assert v.holds
    assert pair.u(Fraction("3.9359") ** 2) == Fraction(-716, 10**11)


def _pair_with_v(v: RationalPolynomial):
    # v given directly; u is irrelevant for tail checks
    from selbergcert.testfn import TestFunctionPair

    return TestFunctionPair(s=(), u=P([1]), v=v, u_prime=P([]), v_prime=v.derivative(),
                            shape_poly=v.derivative() * 2 - v, tail_poly=P([]),
                            spec=ConstraintSpec(v_double_zeros=(2,)))


def test_tail_examples(certificates):
    assert verify_tail_sign(_pair_with_v(P([-2, 1]) ** 2), Fraction(5, 4), ">=0").holds
    f0 = build_test_function(certificates["lem_f0"].spec)
    v = verify_tail_sign(f0, Fraction("1.857"), ">=0")
    assert v.holds and v.witness.startswith("5 distinct roots")
    more7 = build_test_function(certificates["klein_more7"].spec)
    assert more7.v(Fraction("5.25")) == Fraction(-2, 10**12)
    assert verify_tail_sign(more7, Fraction("5.5"), "<=0").holds


def test_fhat_min_examples(certificates):
    g = build_test_function(gaussian_spec())
    v, c = verify_fhat_min(g, Fraction(5, 4), Fraction(9, 4))
    assert v.holds and "monotone" in v.witness
    e = exp(Interval(-1))
    assert c.lo <= e.hi and e.lo <= c.hi
    f0 = build_test_function(certificates["lem_f0"].spec)
    v, c = verify_fhat_min(f0, Fraction("1.04"), Fraction("1.857"))
    assert v.holds and "unique critical point" in v.witness and c.lo >= Fraction("0.673429")
    f1 = build_test_function(certificates["lem_f1"].spec)
    v, c = verify_fhat_min(f1, Fraction("1.857"), Fraction("2.71"))
    assert v.holds and c.lo >= Fraction("0.447759")
    with pytest.raises(ValueError, match="a < b violated"):
        verify_fhat_min(f0, 2, 1)


def test_fhat_min_rejects_interior_minimum():
    # fhat = (1 + (y - 1)^2) e^{-y/2}-like shapes with two critical points
    pair = pair_from_coefficients([Fraction(3), Fraction(0), Fraction(4)])
    v, _ = verify_fhat_min(pair, Fraction(1, 2), Fraction(12))
    assert not v.holds


def test_fhat_decreasing_examples(certificates):
    g = build_test_function(gaussian_spec())
    v, c = verify_fhat_max_decreasing(g, Fraction(5, 4), 4)
    e = exp(Interval(Fraction(-1, 2)))
    assert v.holds and c.lo <= e.hi and e.lo <= c.hi
    more7 = build_test_function(certificates["klein_more7"].spec)
    v, c = verify_fhat_max_decreasing(more7, Fraction("2.575"), Fraction("5.5"))
    assert v.holds
    ref = Interval(more7.v(Fraction("2.325"))) * exp(Interval(Fraction("-2.325") / 2))
    assert c.lo == ref.lo and c.hi == ref.hi


def test_fhat_decreasing_fails_on_critical_point():
    # v = (y - 2)^2 + 1 has fhat with a critical point inside (0.5, 6)
    pair = _pair_with_v(P([-2, 1]) ** 2 + P([1]))
    v, _ = verify_fhat_max_decreasing(pair, Fraction(3, 4), Fraction(25, 4))
    assert not v.holds and "critical" in v.witness


def test_every_embedded_certificate_passes_its_sign_checks(reports):
    for name, r in reports.items():
        assert r.sign_verdicts and all(v.holds for v in r.sign_verdicts), name


def _dense_sign_ok(p, y0, sign, n=10_000):
    ys = np.linspace(float(y0), float(y0) + 200.0, n)
    cs = np.array([float(c) for c in p.coeffs])
    vals = sign * np.polynomial.polynomial.polyval(ys, cs)
    noise = np.polynomial.polynomial.polyval(np.maximum(ys, 1.0), np.abs(cs))
    return bool(np.all(vals >= -1e-9 * noise))


roots = st.lists(st.integers(min_value=1, max_value=40), min_size=0, max_size=4, unique=True)


@given(roots, st.integers(min_value=1, max_value=40), st.sampled_from([1, -1]), st.integers(-3, 3))
def test_verdict_agrees_with_dense_sampling(double, simple, sign, scale_exp):
    """Sampling can only falsify; a true verdict must never be contradicted by it."""
    p = P([Fraction(2) ** scale_exp])
    for r in double:
        p = p * P([-r, 1]) ** 2
    if simple not in double and simple % 3 == 0:
        p = p * P([-simple, 1])  # introduces a sign change
    v = verify_one_signed_ray(p, 0, sign, [Fraction(r) for r in double])
    assert v.holds == _dense_sign_ok(p, 0, sign)


@given(roots, st.fractions(min_value=Fraction(1, 50), max_value=100, max_denominator=50))
def test_scaling_and_sign_flip(double, scale):
    p = -P([1])
    for r in double:
        p = p * P([-r, 1]) ** 2
    zeros = [Fraction(r) for r in double]
    base = verify_one_signed_ray(p, 0, "<=0", zeros).holds
    assert verify_one_signed_ray(p * scale, 0, "<=0", zeros).holds == base
    assert verify_one_signed_ray(-p, 0, ">=0", zeros).holds == base
