"""Approximate generalized scheduling by weighted rectangle cover.

Instances, covers and schedules are plain dicts in the same JSON layout the
``geosched`` command line tool reads and writes.
"""

import json

from . import _core
from ._core import AssertionFailure, CapExceeded, InvalidInput

__all__ = [
    "AssertionFailure",
    "CapExceeded",
    "InvalidInput",
    "audit",
    "brute_force",
    "exact_cover",
    "generate",
    "kc_lp",
    "primal_dual_cache",
    "reduce",
    "schedule_cost",
    "solve",
    "verify_cover",
]

BETA = 1.0 / 12.0


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def generate(family="wflow", n=3, max_size=3, max_release=3, min_weight=1, max_weight=4, seed=1,
             allow_degenerate=False):
    """Seeded random instance. family is wflow, flow2, tardiness or mixed."""
    return json.loads(_core.generate(family, n, max_size, max_release, min_weight, max_weight, seed,
                                     allow_degenerate))


def reduce(instance):
    """Rectangle cover instance (points and rects) for a scheduling instance."""
    return json.loads(_core.reduce(_text(instance)))


def solve(instance, beta=BETA, seed=1, heavy="greedy", threads=1):
    return json.loads(_core.solve(_text(instance), beta, seed, heavy, threads))


def audit(instance, beta=BETA, seed=1, heavy="greedy", descriptor=""):
    """Solve, run every oracle within its cap, and return the ratio report."""
    return json.loads(_core.audit(_text(instance), beta, seed, heavy, descriptor))


def brute_force(instance):
    """Exact optimum; raises CapExceeded above 3 jobs or horizon 14."""
    return json.loads(_core.brute_force(_text(instance)))


def exact_cover(r2c):
    """Minimum weight cover; raises CapExceeded above 24 rectangles."""
    return json.loads(_core.exact_cover(_text(r2c)))


def kc_lp(r2c, beta=BETA):
    return json.loads(_core.kc_lp(_text(r2c), beta))


def verify_cover(r2c, cover):
    return json.loads(_core.verify_cover(_text(r2c), _text(cover)))


def primal_dual_cache(instance):
    """Accepts an identical-release scheduling instance or a caching document."""
    return json.loads(_core.primal_dual_cache(_text(instance)))


def schedule_cost(instance, schedule):
    return _core.schedule_cost(_text(instance), _text(schedule))
