"""Complex continued fractions over imaginary quadratic rings.

Ring elements are written "x,y" for x + y*theta, with theta = i*sqrt(k) for
Zi, Zi2, Zi3 and theta = (1 + i*sqrt(tau))/2 for E, E7, E11.
"""

import json

from . import _ccf
from ._ccf import REPORT_SCHEMA, BudgetExhausted, InvariantViolation

__all__ = [
    "REPORT_SCHEMA",
    "BudgetExhausted",
    "InvariantViolation",
    "rings",
    "covering_radius_sq",
    "expand",
    "expand_value",
    "detect_period",
    "surd_from_period",
    "verify_algorithm",
    "growth_report",
    "condition_c",
    "succession_check",
    "check_growth_polynomial",
    "sweep_j_clause",
]

rings = _ccf.rings
covering_radius_sq = _ccf.covering_radius_sq
growth_report = _ccf.growth_report
condition_c = _ccf.condition_c
succession_check = _ccf.succession_check


def expand(ring, minpoly, root="+im", steps=50, alg="nearest", partition=None):
    """Exact expansion of a root of minpoly = [a, b, c]."""
    return json.loads(_ccf.expand(ring, list(minpoly), root, steps, alg, partition))


def expand_value(ring, value, steps=40, precision=256, precision_cap=4096, alg="nearest", partition=None):
    """Certified numeric expansion of a decimal complex number such as "1.23+0.77i"."""
    return json.loads(_ccf.expand_value(ring, value, steps, precision, precision_cap, alg, partition))


def detect_period(ring, minpoly, root="+im", max_steps=10000, alg="nearest", partition=None):
    return json.loads(_ccf.detect_period(ring, list(minpoly), root, max_steps, alg, partition))


def surd_from_period(ring, preperiod, cycle):
    return json.loads(_ccf.surd_from_period(ring, list(preperiod), list(cycle)))


def verify_algorithm(ring="E", alg="nearest", partition=None):
    return json.loads(_ccf.verify_algorithm(ring, alg, partition))


def check_growth_polynomial():
    return json.loads(_ccf.check_growth_polynomial())


def sweep_j_clause(steps=1000):
    return json.loads(_ccf.sweep_j_clause(steps))
