"""Certified eigenvalue-count bounds for closed hyperbolic surfaces from the Selberg trace formula.

Test functions are chosen so that f(x) = u(x^2) exp(-x^2/2) with polynomial u
and rational coefficients. Sign conditions are decided exactly with Sturm
sequences; transcendental quantities are enclosed with directed-rounding
interval arithmetic. A certificate is verified only when every hypothesis
holds exactly and the bound enclosure lies strictly on the right side of the
threshold.
"""

from .certfile import embedded_certificates, load_certificate, parse_certificate, serialize_certificate
from .certify import Certificate, BoundReport, run_bundle, run_certificate
from .interval import Interval, working_precision
from .testfn import ConstraintSpec, build_test_function

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "BoundReport",
    "ConstraintSpec",
    "Interval",
    "build_test_function",
    "embedded_certificates",
    "load_certificate",
    "parse_certificate",
    "serialize_certificate",
    "run_bundle",
    "run_certificate",
    "working_precision",
]
