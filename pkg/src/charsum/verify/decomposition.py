"""Exact summation over ``Omega_1`` through the rectangle decomposition.

``Omega_1 = {xy < T, x < sqrt T}`` splits into ``U_0`` and the dyadic slabs
``k >= 1``; slab ``k`` is covered by ``U_k`` and the family ``F_k``.  Lattice
points left over at finite depth hug the hyperbola and are summed directly,
provided they lie in the strip ``T - 2t <= xy <= T``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._real import as_fraction, ceil_real
from ..charsums import lattice_sum
from ..cyclosum import CyclotomicSum, lcm
from ..geometry import generate_family, max_slab, rects_lattice_arrays, slab_points, u_k_rect


def min_depth(T) -> int:
    return math.ceil(math.log2(T)) + 2


@dataclass
class CoverReport:
    T: float
    k: int
    depth: int
    total: int = 0
    covered: int = 0
    multiply_covered: int = 0
    in_strip: int = 0
    uncovered: int = 0
    stray: int = 0

    @property
    def ok(self) -> bool:
        return self.multiply_covered == 0 and self.uncovered == 0 and self.stray == 0


def _slab_cover(T, k: int, depth: int):
    """Slab points, the rectangles covering slab ``k`` and per-point cover counts."""
    rects = [u_k_rect(T, k)] + [m.rect for m in generate_family(T, k, depth)]
    rid, rx, ry = rects_lattice_arrays(rects)
    sx, sy = slab_points(T, k)
    width = int(max(sy.max(initial=0), ry.max(initial=0))) + 1
    skey = sx * width + sy          # slab_points is sorted by (x, y): keys ascending
    rkey = rx * width + ry
    pos = np.searchsorted(skey, rkey)
    pos_c = np.minimum(pos, max(skey.size - 1, 0))
    hit = (pos < skey.size) & (skey[pos_c] == rkey) if skey.size else np.zeros(rkey.size, bool)
    counts = np.bincount(pos[hit], minlength=skey.size)
    return (sx, sy), (rx[hit], ry[hit]), counts, int((~hit).sum())


def _in_strip(T, t, xs, ys) -> np.ndarray:
    lo = ceil_real(as_fraction(T) - 2 * as_fraction(t))
    prod = xs * ys
    return (prod >= lo) & (prod <= math.floor(as_fraction(T)))


def cover_check(T, k: int, depth: int, t: float = 1.0) -> CoverReport:
    """Classify every lattice point of slab ``k`` against ``U_k`` and ``F_k``."""
    rep = CoverReport(T, k, depth)
    if k > max_slab(T):
        return rep
    (sx, sy), _, counts, stray = _slab_cover(T, k, depth)
    rep.total = int(sx.size)
    rep.covered = int((counts == 1).sum())
    rep.multiply_covered = int((counts > 1).sum())
    free = counts == 0
    strip = _in_strip(T, t, sx[free], sy[free])
    rep.in_strip = int(strip.sum())
    rep.uncovered = int((~strip).sum())
    rep.stray = stray
    return rep


@dataclass
class Decomposition:
    value: CyclotomicSum
    points: int            # lattice points accounted for, each exactly once
    rect_points: int
    strip_points: int
    reports: list


def decomposition_sum(chi1, chi2, T, depth: int | None = None, t: float = 1.0) -> Decomposition:
    """``S(Omega_1)`` summed rectangle by rectangle.

    Raises ``ValueError`` if a slab point is covered twice or is left over
    outside the strip ``T - 2t <= xy <= T`` (depth too small).
    """
    if depth is None:
        depth = min_depth(T)
    m = lcm(chi1.m, chi2.m)
    total = CyclotomicSum(m)
    n_rect = n_strip = 0
    reports = []
    # U_0 on the positive quadrant
    u0 = u_k_rect(T, 0)
    _, xs, ys = rects_lattice_arrays([u0])
    keep = ys >= 1
    total = total + lattice_sum(chi1, chi2, xs[keep], ys[keep])
    n_rect += int(keep.sum())
    for k in range(1, max_slab(T) + 1):
        (sx, sy), (cx, cy), counts, stray = _slab_cover(T, k, depth)
        if stray or (counts > 1).any():
            raise ValueError(f"slab {k}: rectangles overlap or leave the slab")
        free = counts == 0
        fx, fy = sx[free], sy[free]
        if not _in_strip(T, t, fx, fy).all():
            raise ValueError(f"slab {k}: uncovered points outside the strip; depth {depth} too small")
        total = total + lattice_sum(chi1, chi2, cx, cy) + lattice_sum(chi1, chi2, fx, fy)
        n_rect += int(cx.size)
        n_strip += int(fx.size)
        reports.append(CoverReport(T, k, depth, int(sx.size), int((counts == 1).sum()), 0, int(fx.size), 0, 0))
    return Decomposition(total, n_rect + n_strip, n_rect, n_strip, reports)
