from dataclasses import replace
from fractions import Fraction

import math
import pytest

from selbergcert.certfile import EMBEDDED
from selbergcert.certify import Certificate, run_certificate
from selbergcert.search import (
    FloatEstimate,
    SearchError,
    all_double_zero_slots,
    estimate_bound,
    search_zero_placement,
)
from selbergcert.testfn import ConstraintSpec, gaussian_spec

from helpers import exact


def midpoint(report) -> float:
    e = report.bound_enclosure
    return float((exact(e.lo) + exact(e.hi)) / 2)


def move_zero(cert: Certificate, side: str, index: int, delta: str) -> Certificate:
    name = f"{side}_double_zeros"
    zeros = list(getattr(cert.spec, name))
    zeros[index] += Fraction(delta)
    return replace(cert, spec=replace(cert.spec, **{name: tuple(zeros)}), declared_c=None, reference=None)


def test_f0_estimate(certificates):
    est = estimate_bound(certificates["lem_f0"])
    assert isinstance(est, FloatEstimate) and est.feasible
    assert abs(est.bound - 8.9563) < 1e-3


@pytest.mark.parametrize("name", EMBEDDED)
def test_agreement_with_rigorous_midpoint(certificates, reports, name):
    est = estimate_bound(certificates[name])
    assert est.feasible, est.reason
    assert abs(est.bound - midpoint(reports[name])) < 1e-3


def test_u_sign_violation_is_infeasible(certificates):
    cert = certificates["lem_f0"]
    # a positive value of u far out on the ray contradicts u <= 0 there
    spec = replace(cert.spec, u_values=((Fraction(60), Fraction(1)),))
    est = estimate_bound(cert, spec)
    assert not est.feasible and "u sign" in est.reason


def test_infeasible_never_beats_anything():
    spec = gaussian_spec()
    bad = FloatEstimate(0.0, False, spec, "constructed")
    good = FloatEstimate(100.0, True, spec)
    assert not bad.better_than(good, "upper") and not bad.better_than(None, "upper")
    assert good.better_than(bad, "upper") and good.better_than(None, "lower")


def test_gaussian_estimate_is_finite():
    cert = Certificate(name="gauss", genus=2, direction="upper", window=(Fraction(1), Fraction(2)),
                       spec=gaussian_spec(), expected=("<", Fraction(100)))
    est = estimate_bound(cert)
    assert math.isfinite(est.bound)
    assert est.spec_echo == gaussian_spec()


def test_singular_float_system(certificates):
    cert = certificates["lem_f0"]
    zeros = cert.spec.v_double_zeros
    est = estimate_bound(cert, replace(cert.spec, v_double_zeros=(zeros[0],) * 2 + zeros[2:]))
    assert not est.feasible


def test_no_free_slots_returns_input(certificates):
    cert = certificates["genus2_a"]
    assert search_zero_placement(cert, free=[]) is cert
    only_values = replace(cert, spec=ConstraintSpec(v_values=((Fraction("1.42"), Fraction(1)),)))
    assert all_double_zero_slots(only_values.spec) == []
    assert search_zero_placement(only_values) is only_values


def test_search_error_when_nothing_feasible(certificates):
    cert = certificates["lem_f0"]
    spec = replace(cert.spec, u_values=((Fraction(60), Fraction(1)),))
    with pytest.raises(SearchError):
        search_zero_placement(replace(cert, spec=spec, declared_c=None), free=[("v", 0)], budget=10)


@pytest.mark.slow
def test_seeded_search_is_rigorously_below_threshold(certificates):
    found = search_zero_placement(certificates["lem_f0"], budget=200)
    assert all(z.denominator in (1, 2, 4, 5, 10, 20, 25, 50, 100) for z in found.spec.v_double_zeros)
    r = run_certificate(found)
    assert r.verified and exact(r.bound_enclosure.hi) <= Fraction("8.957")


@pytest.mark.slow
def test_perturbed_search_recovers(certificates):
    perturbed = move_zero(certificates["lem_f0"], "v", 2, "1.0")
    before = run_certificate(perturbed)
    found = search_zero_placement(perturbed, budget=400)
    after = run_certificate(found)
    assert after.bound_enclosure is not None
    assert exact(after.bound_enclosure.hi) < exact(before.bound_enclosure.hi)
    assert abs(midpoint(after) - 8.9563) < 0.05
