"""Closed-form upper bounds for character sums, with regime selection.

Each function returns a :class:`RegimeBound` holding the selected branch, the
``T``-interval of that branch, the exponents used and the evaluated value
(times a fitted constant ``c``).  ``eps`` defaults to 0: at desk scale
``q^eps`` is indistinguishable from a constant, which ``c`` absorbs.
All logarithms are natural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .characters import is_prime

# relative slack when classifying T against a threshold computed in floats
_EDGE = 1e-12


class BelowRangeError(ValueError):
    """``T`` lies below the smallest value a bound is stated for."""


@dataclass(frozen=True)
class RegimeBound:
    theorem: str
    branch: int
    interval: tuple[float, float]
    exponents: dict = field(default_factory=dict)
    value: float = 0.0
    c: float = 1.0
    eps: float = 0.0

    @property
    def label(self) -> str:
        return f"{self.theorem}.b{self.branch}"


def burgess_rhs(N: int, q: int, r: int, prime_modulus: bool = False, c: float = 1.0, eps: float = 0.0) -> float:
    """Right-hand side of Burgess's inequality for an interval of length ``N``.

    General conductor (``r`` in 1..3): ``c N^(1-1/r) q^((r+1)/(4r^2) + eps)``.
    Prime ``q`` (any ``r >= 1``): ``c N^(1-1/r) q^((r+1)/(4r^2)) (ln q)^(1/r)``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if prime_modulus:
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        return c * N ** (1 - 1 / r) * q ** ((r + 1) / (4 * r * r)) * math.log(q) ** (1 / r)
    if r not in (1, 2, 3):
        raise ValueError("for general moduli r must be 1, 2 or 3")
    return c * N ** (1 - 1 / r) * q ** ((r + 1) / (4 * r * r) + eps)


def _at_least(T: float, edge: float) -> bool:
    return T >= edge * (1 - _EDGE)


def theorem1_thresholds(q1: int, q2: int, variant: int) -> tuple[float, float]:
    """``(lower limit, branch switch)`` for the two bound families."""
    Q = q1 * q2
    if variant == 1:
        return Q ** (1 / 3), q1 ** (4 / 3) * q2 ** (1 / 3)
    if variant == 2:
        return Q ** (3 / 8), q1 ** (9 / 8) * q2 ** (3 / 8)
    raise ValueError("variant must be 1 or 2")


def theorem1_bound(T: float, q1: int, q2: int, eps: float = 0.0, variant: int = 1, c: float = 1.0) -> RegimeBound:
    """Bound for ``S(T)`` with primitive characters of conductors ``q1 <= q2``.

    Variant 1: ``T^(2/3) Q^(1/9)`` up to ``q1^(4/3) q2^(1/3)``, then ``T^(3/4) q2^(1/12)``.
    Variant 2: ``T^(1/2) Q^(3/16)`` up to ``q1^(9/8) q2^(3/8)``, then ``T^(2/3) q2^(1/8)``.
    """
    if q1 > q2:
        raise ValueError("need q1 <= q2")
    lo, mid = theorem1_thresholds(q1, q2, variant)
    if not _at_least(T, lo):
        raise BelowRangeError(f"T={T} below the lower limit {lo} of variant {variant}")
    Q = q1 * q2
    below = T <= mid * (1 + _EDGE)
    if variant == 1:
        if below:
            e = {"T": 2 / 3, "Q": 1 / 9 + eps}
            return RegimeBound("thm1.v1", 1, (lo, mid), e, c * T ** e["T"] * Q ** e["Q"], c, eps)
        e = {"T": 3 / 4, "q2": 1 / 12 + eps}
        return RegimeBound("thm1.v1", 2, (mid, math.inf), e, c * T ** e["T"] * q2 ** e["q2"], c, eps)
    if below:
        e = {"T": 1 / 2, "Q": 3 / 16 + eps}
        return RegimeBound("thm1.v2", 1, (lo, mid), e, c * T ** e["T"] * Q ** e["Q"], c, eps)
    e = {"T": 2 / 3, "q2": 1 / 8 + eps}
    return RegimeBound("thm1.v2", 2, (mid, math.inf), e, c * T ** e["T"] * q2 ** e["q2"], c, eps)


def theorem1_best(T: float, q1: int, q2: int, eps: float = 0.0, c: float = 1.0) -> RegimeBound:
    """Smaller of the two variants where both apply."""
    cands = []
    for v in (1, 2):
        try:
            cands.append(theorem1_bound(T, q1, q2, eps, v, c))
        except BelowRangeError:
            pass
    if not cands:
        raise BelowRangeError(f"T={T} below every range for q1={q1}, q2={q2}")
    return min(cands, key=lambda b: b.value)


COROLLARY_EDGES = (2 / 3, 11 / 12, 3 / 2, 9 / 4)
# (T exponent, q exponent) per branch
COROLLARY_BRANCHES = ((2 / 3, 2 / 9), (1 / 2, 3 / 8), (2 / 3, 1 / 8), (1 / 2, 1 / 2))


def corollary1_bound(T: float, q: int, eps: float = 0.0, c: float = 1.0) -> RegimeBound:
    """Equal conductors ``q1 = q2 = q``: four branches split at ``q^(11/12)``, ``q^(3/2)``, ``q^(9/4)``."""
    edges = [q**a for a in COROLLARY_EDGES] + [math.inf]
    if not _at_least(T, edges[0]):
        raise BelowRangeError(f"T={T} below q^(2/3)={edges[0]}")
    for b in range(4):
        if T <= edges[b + 1] or b == 3:
            et, eq = COROLLARY_BRANCHES[b]
            e = {"T": et, "q": eq + eps}
            return RegimeBound("cor1", b + 1, (edges[b], edges[b + 1]), e, c * T**et * q ** (eq + eps), c, eps)
    raise AssertionError("unreachable")


def nu_r(r: int) -> int:
    return 1 if r == 2 else 0


def theorem2_threshold(q1: int, q2: int, r: int) -> float:
    """``T_r = q1^((r+1)^2/4r) q2^((r+1)/4r) (log q1)^(r+1) (log q2)^(nu_r r(r+1) + r^2 + 1)``."""
    return (q1 ** ((r + 1) ** 2 / (4 * r)) * q2 ** ((r + 1) / (4 * r))
            * math.log(q1) ** (r + 1) * math.log(q2) ** (nu_r(r) * r * (r + 1) + r * r + 1))


def prime_parameter(T: float, q2: int, r: int) -> float:
    """``t = T^(r/(r+1)) q2^(1/4r) (log q2)^((1-r)/(r+1))`` used for prime conductors."""
    return T ** (r / (r + 1)) * q2 ** (1 / (4 * r)) * math.log(q2) ** ((1 - r) / (r + 1))


def theorem2_bound(T: float, q1: int, q2: int, r: int = 2, c: float = 1.0) -> RegimeBound:
    """Prime conductors ``q1 <= q2`` and integer ``r >= 2``."""
    if r < 2:
        raise ValueError("r must be >= 2")
    for q in (q1, q2):
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
    if q1 > q2:
        raise ValueError("need q1 <= q2")
    lo = (q1 * q2) ** ((r + 1) / (4 * r))
    if not _at_least(T, lo):
        raise BelowRangeError(f"T={T} below (q1 q2)^((r+1)/4r)={lo}")
    Tr = theorem2_threshold(q1, q2, r)
    L1, L2 = math.log(q1), math.log(q2)
    theorem = f"thm2.r{r}"
    if T <= Tr:
        e = {"T": 1 - 1 / r, "Q": (r + 1) / (4 * r * r), "log_q1": 1 / r, "log_q2": 1 / r + nu_r(r) + 1}
        v = T ** e["T"] * (q1 * q2) ** e["Q"] * L1 ** e["log_q1"] * L2 ** e["log_q2"]
        return RegimeBound(theorem, 1, (lo, Tr), e, c * v, c, 0.0)
    e = {"T": r / (r + 1), "q2": 1 / (4 * r), "log_q2": 2 / (r + 1)}
    v = T ** e["T"] * q2 ** e["q2"] * L2 ** e["log_q2"]
    return RegimeBound(theorem, 2, (Tr, math.inf), e, c * v, c, 0.0)


# ---------------------------------------------------------------- proof parameters

def small_T_parameter(T: float, q2: int) -> float:
    """``t = T^(3/4) q2^(1/12)``: balances the strip count against the ``y >= t`` part."""
    return T ** 0.75 * q2 ** (1 / 12)


def large_T_parameter(T: float, q2: int) -> float:
    """``t = T^(2/3) q2^(1/8)``."""
    return T ** (2 / 3) * q2 ** (1 / 8)


def upper_part_bound(T: float, t: float, q2: int, r: int, eta: float = 0.0) -> float:
    """Burgess estimate for the sum over ``y >= t``: ``T t^(-1/r) q2^((r+1)/(4r^2) + eta)``."""
    return T * t ** (-1 / r) * q2 ** ((r + 1) / (4 * r * r) + eta)


def prior_bound(T: float, q: int) -> float:
    """Earlier equal-conductor bound ``T^(13/18) q^(5/27)``, kept for comparison tables."""
    return T ** (13 / 18) * q ** (5 / 27)


def bound_for(theorem: str, T: float, q1: int, q2: int, c: float = 1.0) -> RegimeBound:
    """Dispatch by name: ``thm1.v1``, ``thm1.v2``, ``thm1``, ``cor1``, ``thm2.r<r>``."""
    if theorem == "thm1.v1":
        return theorem1_bound(T, q1, q2, 0.0, 1, c)
    if theorem == "thm1.v2":
        return theorem1_bound(T, q1, q2, 0.0, 2, c)
    if theorem == "thm1":
        return theorem1_best(T, q1, q2, 0.0, c)
    if theorem == "cor1":
        if q1 != q2:
            raise ValueError("cor1 needs q1 == q2")
        return corollary1_bound(T, q1, 0.0, c)
    if theorem.startswith("thm2.r"):
        return theorem2_bound(T, q1, q2, int(theorem[6:]), c)
    raise ValueError(f"unknown theorem {theorem!r}")
