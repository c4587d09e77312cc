"""
Acceptance checks run by ``run.py selftest``.

Every module defines one function of the module's name taking
``(..., verbosity, log_queue)`` and returning ``(result, seconds)``; the
result always carries ``ok``. ``suites.txt`` lists which keys each check takes.
"""
from typing import Tuple

from src import ff_base
from src.arith_provider import carlitz_provider
from src.classes.cover import CoverDescription
from src.classes.finite_field import FqContext, FqPoly
from src.stickelberger import default_degree


CARLITZ_INSTANCES = ((3, "t", 1), (3, "t", 2), (3, "t", 3), (2, "t^2+t+1", 1), (2, "t^2+t+1", 2))
QUICK_INSTANCES = ((3, "t", 1), (3, "t", 2), (2, "t^2+t+1", 1))
LEVEL_TWO_INSTANCES = ((3, "t", 2), (2, "t^2+t+1", 2))

FULL_DEGREE = 8
QUICK_DEGREE = 4


def instances(quick: bool):
    return QUICK_INSTANCES if quick else CARLITZ_INSTANCES


def degree(quick: bool) -> int:
    return QUICK_DEGREE if quick else FULL_DEGREE


def carlitz_cover(q: int, prime_text: str, level: int, D: int) -> Tuple[FqContext, FqPoly, CoverDescription]:
    ctx = FqContext.create(q)
    prime = ff_base.parse_poly(ctx, prime_text)
    return ctx, prime, carlitz_provider(ctx, prime, level, D)


def label(q: int, prime_text: str, level: int) -> str:
    return f"q={q} p={prime_text} n={level}"


def carlitz_default(q: int, prime_text: str, level: int) -> Tuple[FqContext, FqPoly, CoverDescription, int]:
    """The cover at the default degree bound max(n deg p + 2, 6)."""
    ctx = FqContext.create(q)
    prime = ff_base.parse_poly(ctx, prime_text)
    D = default_degree(level, prime.degree)
    return ctx, prime, carlitz_provider(ctx, prime, level, D), D
