"""Interval sums and the convolution sum ``S(T) = sum_{xy <= T} chi1(x) chi2(y)``.

Three independent evaluations of ``S``:

* :func:`convolution_sum_naive` - enumerate every pair ``(x, y)``;
* :func:`convolution_sum_hyperbola` - the Dirichlet hyperbola identity with
  character prefix sums, ``O(sqrt(T) * min(T, q))`` work;
* :func:`region_sum` over geometry regions (``Omega`` with the ``<=`` fiber,
  or the decomposition in :mod:`charsum.verify`).

All results are :class:`~charsum.cyclosum.CyclotomicSum` values in order
``lcm(m1, m2)``.  Pairs range over ``x, y >= 1`` for every modulus.
"""
from __future__ import annotations

import numpy as np

from ._real import floor_real, isqrt_le
from .characters import ZERO, DirichletCharacter
from .cyclosum import CyclotomicSum, lcm

# pair blocks for the naive enumeration
_NAIVE_BLOCK = 1 << 22


def _full_period_hist(chi: DirichletCharacter) -> np.ndarray:
    t = chi.table()
    return np.bincount(t[t != ZERO], minlength=chi.m)


def _ranges(starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Concatenation of ``arange(s, s + l)`` for each pair, vectorised."""
    lengths = np.asarray(lengths, dtype=np.int64)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    ends = np.cumsum(lengths)
    offs = np.repeat(ends - lengths, lengths)
    return np.arange(total, dtype=np.int64) - offs + np.repeat(np.asarray(starts, dtype=np.int64), lengths)


def interval_sum(chi: DirichletCharacter, M: int, N: int) -> CyclotomicSum:
    """``sum_{M < n <= M + N} chi(n)``.

    Whole periods enter as ``(N // q)`` copies of the full-period histogram
    (value 0 unless chi is principal), so the work is ``O(min(N, q))`` and the
    histogram is still the exact ledger of all ``N`` terms.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    q = chi.q
    s = CyclotomicSum(chi.m)
    full, rem = divmod(N, q)
    if full:
        h = _full_period_hist(chi)
        nz = np.flatnonzero(h)
        s.add_many(nz, h[nz] * full)
    if rem:
        idx = (M + 1 + np.arange(rem, dtype=np.int64)) % q
        v = chi.table()[idx]
        s.add_many(v[v != ZERO])
    return s


def prefix_sum(chi: DirichletCharacter, N: int) -> CyclotomicSum:
    """``A(N) = sum_{1 <= n <= N} chi(n)``."""
    return interval_sum(chi, 0, max(N, 0))


def convolution_sum_naive(chi1: DirichletCharacter, chi2: DirichletCharacter, T) -> CyclotomicSum:
    """Reference oracle: one term per lattice pair with ``xy <= T``."""
    if T < 0:
        raise ValueError("T must be >= 0")
    n = floor_real(T)
    m = lcm(chi1.m, chi2.m)
    a, b = m // chi1.m, m // chi2.m
    t1, t2 = chi1.table(), chi2.table()
    out = CyclotomicSum(m)
    if n < 1:
        return out
    xs = np.arange(1, n + 1, dtype=np.int64)
    cnt = n // xs
    # blocks of consecutive x holding about _NAIVE_BLOCK pairs each
    cuts = np.searchsorted(np.cumsum(cnt), np.arange(_NAIVE_BLOCK, int(cnt.sum()), _NAIVE_BLOCK))
    for bx, bc in zip(np.split(xs, cuts), np.split(cnt, cuts)):
        px = np.repeat(bx, bc)
        py = _ranges(np.ones_like(bc), bc)
        e1 = t1[px % chi1.q]
        e2 = t2[py % chi2.q]
        keep = (e1 != ZERO) & (e2 != ZERO)
        out.add_many((e1[keep] * a + e2[keep] * b) % m)
    return out


def _weighted_prefix_terms(chi_outer, chi_inner, limits, m) -> CyclotomicSum:
    """``sum_{x=1}^{len(limits)} chi_outer(x) * A_inner(limits[x-1])`` in order ``m``."""
    a, b = m // chi_outer.m, m // chi_inner.m
    q = chi_inner.q
    xs = np.arange(1, len(limits) + 1, dtype=np.int64)
    e_out = chi_outer.table()[xs % chi_outer.q]
    keep = e_out != ZERO
    xs, e_out, lim = xs[keep], e_out[keep], np.asarray(limits, dtype=np.int64)[keep]
    out = CyclotomicSum(m)
    if xs.size == 0:
        return out
    full, rem = np.divmod(lim, q)
    # remainders: explicit terms y = 1..rem
    ys = _ranges(np.ones_like(rem), rem)
    e_in = chi_inner.table()[ys % q]
    rot = np.repeat(e_out, rem)
    live = e_in != ZERO
    out.add_many((rot[live] * a + e_in[live] * b) % m)
    # whole periods: full-period histogram times the period count
    if full.any():
        h = _full_period_hist(chi_inner)
        j_in = np.flatnonzero(h)
        sel = full > 0
        idx = (e_out[sel, None] * a + j_in[None, :] * b) % m
        out.add_many(idx, full[sel, None] * h[j_in][None, :])
    return out


def convolution_sum_hyperbola(chi1: DirichletCharacter, chi2: DirichletCharacter, T) -> CyclotomicSum:
    """Dirichlet hyperbola identity.

    ``S(T) = sum_{x<=s} chi1(x) A2(T/x) + sum_{y<=s} chi2(y) A1(T/y) - A1(s) A2(s)``
    with ``s = floor(sqrt(T))``.
    """
    if T < 0:
        raise ValueError("T must be >= 0")
    n = floor_real(T)
    m = lcm(chi1.m, chi2.m)
    if n < 1:
        return CyclotomicSum(m)
    s = isqrt_le(n)
    lims = n // np.arange(1, s + 1, dtype=np.int64)
    first = _weighted_prefix_terms(chi1, chi2, lims, m)
    second = _weighted_prefix_terms(chi2, chi1, lims, m)
    square = prefix_sum(chi1, s) * prefix_sum(chi2, s)
    return first + second - square


def region_sum(chi1: DirichletCharacter, chi2: DirichletCharacter, region) -> CyclotomicSum:
    """``S(region)``: the character sum over the region's lattice points."""
    xs, ys = region.lattice_points()
    return lattice_sum(chi1, chi2, xs, ys)


def lattice_sum(chi1: DirichletCharacter, chi2: DirichletCharacter, xs, ys) -> CyclotomicSum:
    m = lcm(chi1.m, chi2.m)
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    e1 = chi1.table()[xs % chi1.q]
    e2 = chi2.table()[ys % chi2.q]
    keep = (e1 != ZERO) & (e2 != ZERO)
    out = CyclotomicSum(m)
    out.add_many((e1[keep] * (m // chi1.m) + e2[keep] * (m // chi2.m)) % m)
    return out


def prefix_values(chi: DirichletCharacter) -> np.ndarray:
    """Complex partial sums ``P(n) = sum_{1<=k<=n} chi(k)`` for ``n = 0..q-1``."""
    t = chi.table()
    roots = np.exp(2j * np.pi * np.arange(chi.m) / chi.m)
    vals = np.where(t == ZERO, 0, roots[np.where(t == ZERO, 0, t)])
    vals = np.roll(vals, -1)  # vals[k] = chi(k + 1)
    P = np.zeros(chi.q, dtype=np.complex128)
    P[1:] = np.cumsum(vals[: chi.q - 1])
    return P


def _best_pair(P: np.ndarray, cand: np.ndarray, q: int, rel_tol: float = 1e-9):
    """Maximum ``|P[b] - P[a]|`` over candidate index pairs, with witness.

    The pair ``(a, b)`` stands for the interval starting after ``a``; of the two
    intervals realising it (lengths ``d`` and ``q - d``) the shorter one is
    returned, and ties within ``rel_tol`` go to the smallest ``(N, M)``.
    """
    pts = P[cand]
    D = np.abs(pts[:, None] - pts[None, :])
    best = D.max()
    ia, ib = np.nonzero(D >= best * (1 - rel_tol))
    a, b = cand[ia], cand[ib]
    N = (b - a) % q
    order = np.lexsort((a, N))
    k = order[0]
    return float(best), int(a[k]), int(N[k])


def _hull_candidates(P: np.ndarray) -> np.ndarray:
    from scipy.spatial import ConvexHull, QhullError

    pts = np.column_stack([P.real, P.imag])
    try:
        hull = ConvexHull(pts)
    except QhullError:
        # collinear point set (real characters): extremes along the line
        line = P.real if np.ptp(P.real) >= np.ptp(P.imag) else P.imag
        lo, hi = line.min(), line.max()
        tol = 1e-9 * max(1.0, hi - lo)
        return np.flatnonzero((line <= lo + tol) | (line >= hi - tol))
    v = hull.vertices
    # include points within rounding of the hull (ties between equal maxima)
    eq = hull.equations
    dist = pts @ eq[:, :2].T + eq[:, 2]
    near = np.flatnonzero(dist.max(axis=1) >= -1e-9)
    return np.union1d(v, near)


def max_interval_sum(chi: DirichletCharacter, N_max: int):
    """``max |sum_{M<n<=M+N} chi(n)|`` over ``0 <= M < q``, ``1 <= N <= N_max``.

    Returns ``(magnitude, (M, N))``.  For ``N_max = q`` partial sums are
    periodic and the answer is the diameter of ``{P(0), ..., P(q-1)}``, found
    among convex-hull vertices; shorter scans enumerate every ``(M, N)``.
    """
    if chi.is_principal():
        raise ValueError("principal character: interval sums grow linearly")
    q = chi.q
    if not 1 <= N_max <= q:
        raise ValueError(f"N_max must lie in [1, {q}]")
    P = prefix_values(chi)
    if N_max >= q - 1:
        cand = _hull_candidates(P) if q > 8 else np.arange(q)
        best, a, N = _best_pair(P, cand, q)
        return best, (a, N)
    PP = np.concatenate([P, P])
    best, arg = -1.0, (0, 1)
    for N in range(1, N_max + 1):
        d = np.abs(PP[N : N + q] - P)
        k = int(np.argmax(d))
        if d[k] > best * (1 + 1e-9):
            best, arg = float(d[k]), (k, N)
    return best, arg
