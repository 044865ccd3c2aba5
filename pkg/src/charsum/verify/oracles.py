"""Lattice counts under the hyperbola and the divisor-sum asymptotic."""
from __future__ import annotations

import math

import numpy as np

from .._real import as_fraction, ceil_real, floor_real, isqrt_lt, max_below

EULER_GAMMA = 0.57721566490153286061


def divisor_sum(T: int) -> int:
    """``sum_{x=1}^{T} floor(T/x)`` by the direct loop."""
    if T < 1:
        raise ValueError("T must be >= 1")
    x = np.arange(1, T + 1, dtype=np.int64)
    return int((T // x).sum())


def divisor_sum_hyperbola(T: int) -> int:
    """The same count in ``O(sqrt T)``: ``2 sum_{x<=s} floor(T/x) - s^2``."""
    s = math.isqrt(T)
    x = np.arange(1, s + 1, dtype=np.int64)
    return int(2 * (T // x).sum() - s * s)


def divisor_sums_upto(N: int) -> np.ndarray:
    """``D[T] = sum_{x<=T} floor(T/x)`` for ``T = 0..N`` via a divisor-count sieve."""
    d = np.zeros(N + 1, dtype=np.int64)
    for k in range(1, N + 1):
        d[k::k] += 1
    return np.cumsum(d)


def divisor_residual(T: int) -> float:
    """``D(T) - T ln T - (2 gamma - 1) T``."""
    return divisor_sum(T) - T * math.log(T) - (2 * EULER_GAMMA - 1) * T


def residual_scan(N: int) -> tuple[float, int]:
    """``max_{T <= N} |D(T) - T ln T - (2 gamma - 1)T| / sqrt T`` and its argmax."""
    D = divisor_sums_upto(N)[1:].astype(np.float64)
    T = np.arange(1, N + 1, dtype=np.float64)
    r = np.abs(D - T * np.log(T) - (2 * EULER_GAMMA - 1) * T) / np.sqrt(T)
    k = int(np.argmax(r))
    return float(r[k]), k + 1


def strip_count(T, t) -> int:
    """Number of ``x, y >= 1`` with ``T - 2t <= xy <= T``, enumerated column by column."""
    Tf, tf = as_fraction(T), as_fraction(t)
    if tf <= 0:
        raise ValueError("t must be positive")
    hi = floor_real(Tf)
    if hi < 1:
        return 0
    lo = max(ceil_real(Tf - 2 * tf), 1)
    x = np.arange(1, hi + 1, dtype=np.int64)
    y_hi = hi // x
    y_lo = -((-lo) // x)
    return int(np.maximum(y_hi - y_lo + 1, 0).sum())


def hyperbola_count(T) -> int:
    """Points with ``x, y >= 1`` and ``xy <= T``."""
    n = floor_real(T)
    return divisor_sum_hyperbola(n) if n >= 1 else 0


def omega1_count(T) -> int:
    """Points with ``xy < T`` and ``x < sqrt T``."""
    n = max_below(T)
    s = isqrt_lt(T)
    if n < 1 or s < 1:
        return 0
    x = np.arange(1, s + 1, dtype=np.int64)
    return int((n // x).sum())
