"""Shared fixtures: the embedded certificates and one cached bundle run per session."""

from __future__ import annotations

import os
import time

import mpmath
import pytest
from hypothesis import HealthCheck, settings

from selbergcert.certfile import embedded_certificates
from selbergcert.certify import run_bundle

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []
BUNDLE_SECONDS: dict[str, float] = {}


@pytest.fixture(autouse=True)
def oracle_precision():
    """mpmath oracles run at 320 bits; the global context is restored after each test."""
    with mpmath.workprec(320):
        yield


@pytest.fixture(scope="session")
def certificates():
    return embedded_certificates()


@pytest.fixture(scope="session")
def reference_bundle(certificates):
    start = time.perf_counter()
    bundle = run_bundle("paper", certificates)
    BUNDLE_SECONDS["all"] = time.perf_counter() - start
    return bundle


@pytest.fixture(scope="session")
def bundle_seconds(reference_bundle):
    return BUNDLE_SECONDS["all"]


@pytest.fixture(scope="session")
def reports(reference_bundle):
    return {r.certificate: r for r in reference_bundle.reports}


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
