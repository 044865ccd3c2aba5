"""Exact integer comparisons against real parameters.

Real inputs (``int``, ``float``, ``Fraction``) are converted to ``Fraction``
so that floors, ceilings and square-root comparisons are exact with respect
to the value actually passed in.
"""
from __future__ import annotations

import math
from fractions import Fraction


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float) and not math.isfinite(v):
        raise ValueError(f"non-finite parameter {v!r}")
    return Fraction(v)


def floor_real(v) -> int:
    return math.floor(as_fraction(v))


def ceil_real(v) -> int:
    return math.ceil(as_fraction(v))


def max_below(v) -> int:
    """Largest integer strictly less than ``v``."""
    return ceil_real(v) - 1


def isqrt_le(v) -> int:
    """Largest integer ``x >= 0`` with ``x*x <= v``."""
    f = as_fraction(v)
    if f < 0:
        return -1
    x = math.isqrt(math.floor(f))
    return x


def isqrt_lt(v) -> int:
    """Largest integer ``x >= 0`` with ``x*x < v`` (``-1`` if none)."""
    f = as_fraction(v)
    if f <= 0:
        return -1
    x = math.isqrt(math.floor(f))
    if x * x == f:
        x -= 1
    return x
