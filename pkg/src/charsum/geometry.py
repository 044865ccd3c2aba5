"""Rectangles under the hyperbola ``xy = T`` and the regions built from them.

The staircase ``U_k`` (``k >= 0``) covers ``{x < sqrt(T)/2^k}`` in the dyadic
slab ``2^(k-1) sqrt(T) <= y < 2^k sqrt(T)``; the rest of the slab under the
hyperbola is filled by the family ``F_k`` generated from
``Pi_k = r(U_k)`` by the operators

    r([x0,x1) x [y0,y1)) = [x1, (3 x1 - x0)/2) x [y0, 2T/(3 x1 - x0))
    u([x0,x1) x [y0,y1)) = [x0, (x0 + x1)/2)   x [y1, 2T/(x0 + x1))

both of which keep the upper-right vertex on the hyperbola.  Coordinates are
floats; the top edge of an on-hyperbola rectangle is always recomputed as
``T / x1`` so no drift accumulates along long words.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._real import as_fraction, ceil_real, floor_real, isqrt_le, isqrt_lt, max_below

GAMMA_RTOL = 1e-12


def sigma_k(k: int) -> float:
    """``1/2 + 1/4 + ... + 1/2^k = 1 - 2^-k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 1.0 - math.ldexp(1.0, -k)


@dataclass(frozen=True)
class Rect:
    """Half-open rectangle ``[x0, x1) x [y0, y1)``.

    ``T`` is set when the upper-right vertex lies on the hyperbola;
    ``left_open`` makes the left edge exclusive (the ``(0; ...)`` edge of
    ``U_k``).
    """

    x0: float
    x1: float
    y0: float
    y1: float
    T: float | None = None
    left_open: bool = False

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError(f"degenerate rectangle [{self.x0}, {self.x1}) x [{self.y0}, {self.y1})")

    @classmethod
    def on_gamma(cls, x0: float, x1: float, y0: float, T: float, left_open: bool = False) -> "Rect":
        return cls(x0, x1, y0, T / x1, T, left_open)

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def ratio(self) -> float:
        """Width over the abscissa of the upper-right vertex."""
        return self.width / self.x1

    def is_on_gamma(self, rtol: float = GAMMA_RTOL) -> bool:
        return self.T is not None and abs(self.x1 * self.y1 - self.T) <= rtol * abs(self.T)

    def x_range(self) -> tuple[int, int]:
        lo = math.floor(self.x0) + 1 if self.left_open else math.ceil(self.x0)
        return lo, math.ceil(self.x1) - 1

    def y_range(self) -> tuple[int, int]:
        return math.ceil(self.y0), math.ceil(self.y1) - 1

    def contains(self, x, y) -> bool:
        left = self.x0 < x if self.left_open else self.x0 <= x
        return bool(left and x < self.x1 and self.y0 <= y < self.y1)


def _require_gamma(p: Rect) -> None:
    if not p.is_on_gamma():
        raise ValueError(f"upper-right vertex of {p} is not on the hyperbola")


def r_op(p: Rect) -> Rect:
    _require_gamma(p)
    return Rect.on_gamma(p.x1, (3 * p.x1 - p.x0) / 2, p.y0, p.T)


def u_op(p: Rect) -> Rect:
    _require_gamma(p)
    return Rect.on_gamma(p.x0, (p.x0 + p.x1) / 2, p.y1, p.T)


def u_k_rect(T: float, k: int) -> Rect:
    """``U_0 = (0, sqrt T) x [0, sqrt T)`` and ``U_k = (0, sqrt T/2^k) x [2^(k-1) sqrt T, 2^k sqrt T)``."""
    if T <= 1:
        raise ValueError("T must exceed 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    s = math.sqrt(T)
    if k == 0:
        return Rect(0.0, s, 0.0, s, T, left_open=True)
    return Rect(0.0, math.ldexp(s, -k), math.ldexp(s, k - 1), math.ldexp(s, k), T, left_open=True)


def pi_k_rect(T: float, k: int) -> Rect:
    """``Pi_k = [sqrt T/2^k, 3 sqrt T/2^(k+1)) x [2^(k-1) sqrt T, (2^(k+1)/3) sqrt T)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if T <= 1:
        raise ValueError("T must exceed 1")
    s = math.sqrt(T)
    return Rect.on_gamma(math.ldexp(s, -k), math.ldexp(3 * s, -(k + 1)), math.ldexp(s, k - 1), T)


class FamilyMember(NamedTuple):
    rect: Rect
    order: int
    word: str  # "ru" means r(u(Pi_k))


def generate_family(T: float, k: int, max_order: int, min_width: float = 0.0) -> list[FamilyMember]:
    """Members of ``F_k`` up to ``max_order``, breadth first, ``r`` before ``u``.

    Subtrees are cut at the first rectangle narrower than ``min_width``
    (children are always narrower than their parent).
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    root = pi_k_rect(T, k)
    out = []
    queue = deque([FamilyMember(root, 0, "")]) if root.width >= min_width else deque()
    while queue:
        node = queue.popleft()
        out.append(node)
        if node.order == max_order:
            continue
        for name, op in (("r", r_op), ("u", u_op)):
            child = op(node.rect)
            if child.width >= min_width:
                queue.append(FamilyMember(child, node.order + 1, name + node.word))
    return out


@dataclass(frozen=True)
class ChainParams:
    """``x_n = x - (x - x0)/2^n``, the abscissas of the chain ``Phi_1, Phi_2, ...``."""

    x0: float
    x: float
    T: float

    def __post_init__(self):
        if not 1 <= self.x0 < self.x:
            raise ValueError(f"need 1 <= x0 < x, got x0={self.x0}, x={self.x}")
        if self.T <= 0:
            raise ValueError("T must be positive")

    @property
    def delta(self) -> float:
        return self.x - self.x0

    @property
    def y(self) -> float:
        return self.T / self.x

    def x_n(self, n: int) -> float:
        return self.x - math.ldexp(self.delta, -n)


def chain_rect(c: ChainParams, n: int) -> Rect:
    """``Phi_n = [x_(n-1), x_n) x [y, T/x_n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Rect.on_gamma(c.x_n(n - 1), c.x_n(n), c.y, c.T)


def chain_areas_closed(c: ChainParams, n: int) -> tuple[float, float]:
    """Closed forms for ``|Phi_n|`` and ``|u(Phi_n)|``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d2n = math.ldexp(1.0, -n)
    area_phi = c.delta**2 * d2n * d2n * c.y / c.x_n(n)
    denom = 4.0 * (1.0 - 1.5 * (c.delta / c.x) * d2n)
    if denom <= 0:
        raise ValueError("chain parameters outside the valid range")
    return area_phi, area_phi / denom


def lemma5_bound(T: float, k: int, l: int) -> float:
    """Upper bound for the area of any order-``l`` member of ``F_k``.

    ``|Pi_k| / (4^l prod_{j=1..l} (1 - 1.5 rho_(j-1)))`` where ``rho_0 = 1/3``
    is the width ratio of ``Pi_k`` and ``rho_j = (2/3) rho_(j-1)`` bounds the
    ratio after ``j`` steps.
    """
    if l < 0:
        raise ValueError("l must be >= 0")
    bound = pi_k_rect(T, k).area
    rho = 1.0 / 3.0
    for _ in range(l):
        bound /= 4.0 * (1.0 - 1.5 * rho)
        rho *= 2.0 / 3.0
    return bound


def rect_lattice_points(p: Rect) -> list[tuple[int, int]]:
    (xl, xh), (yl, yh) = p.x_range(), p.y_range()
    return [(x, y) for x in range(xl, xh + 1) for y in range(yl, yh + 1)]


def _ranges(starts, lengths) -> np.ndarray:
    lengths = np.asarray(lengths, dtype=np.int64)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    ends = np.cumsum(lengths)
    return (np.arange(total, dtype=np.int64) - np.repeat(ends - lengths, lengths)
            + np.repeat(np.asarray(starts, dtype=np.int64), lengths))


def rects_lattice_arrays(rects) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lattice points of many rectangles at once: ``(rect_index, xs, ys)``."""
    if not rects:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z
    x0 = np.array([p.x0 for p in rects])
    x1 = np.array([p.x1 for p in rects])
    y0 = np.array([p.y0 for p in rects])
    y1 = np.array([p.y1 for p in rects])
    lo_open = np.array([p.left_open for p in rects])
    xl = np.where(lo_open, np.floor(x0) + 1, np.ceil(x0)).astype(np.int64)
    xh = np.ceil(x1).astype(np.int64) - 1
    yl = np.ceil(y0).astype(np.int64)
    yh = np.ceil(y1).astype(np.int64) - 1
    nx = np.maximum(xh - xl + 1, 0)
    ny = np.maximum(yh - yl + 1, 0)
    ids = np.arange(len(rects), dtype=np.int64)
    col_id = np.repeat(ids, nx)
    xs_col = _ranges(xl, nx)
    per_col = ny[col_id]
    rid = np.repeat(col_id, per_col)
    xs = np.repeat(xs_col, per_col)
    ys = _ranges(yl[col_id], per_col)
    return rid, xs, ys


# --------------------------------------------------------------------------- regions

REGION_KINDS = ("Omega", "OmegaClosed", "Omega1", "Omega2", "U0", "Wt", "Wpt", "Strip", "Rect")


@dataclass(frozen=True)
class Region:
    """A lattice region in the positive quadrant (``x, y >= 1``).

    ``Omega``: xy < T;  ``OmegaClosed``: xy <= T;  ``Omega1``: xy < T, x < sqrt T;
    ``Omega2``: xy < T, y < sqrt T;  ``U0``: x, y < sqrt T;
    ``Wt``: xy < T, y <= t, x <= sqrt T;  ``Wpt``: xy < T, y > t;
    ``Strip``: T - 2t <= xy <= T;  ``Rect``: the given rectangle.
    """

    kind: str
    T: float = 0.0
    t: float | None = None
    rect: Rect | None = None

    def __post_init__(self):
        if self.kind not in REGION_KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.kind in ("Wt", "Wpt", "Strip") and self.t is None:
            raise ValueError(f"region {self.kind} needs t")
        if self.kind == "Rect" and self.rect is None:
            raise ValueError("Rect region needs rect")
        if self.kind != "Rect":
            try:
                as_fraction(self.T)
            except (ValueError, OverflowError) as exc:
                raise ValueError(f"unbounded region: T={self.T!r}") from exc

    # integer thresholds; all comparisons below are exact
    def _bounds(self):
        """``(x_max, y_max, prod_lo, prod_hi, y_min)`` for the named regions."""
        T, t = self.T, self.t
        lt, le = max_below(T), floor_real(T)
        s_lt, s_le = isqrt_lt(T), isqrt_le(T)
        big = max(le, 1)
        kind = self.kind
        if kind == "Omega":
            return big, big, 1, lt, 1
        if kind == "OmegaClosed":
            return big, big, 1, le, 1
        if kind == "Omega1":
            return s_lt, big, 1, lt, 1
        if kind == "Omega2":
            return big, s_lt, 1, lt, 1
        if kind == "U0":
            return s_lt, s_lt, 1, lt, 1
        if kind == "Wt":
            return s_le, floor_real(t), 1, lt, 1
        if kind == "Wpt":
            return big, big, 1, lt, floor_real(t) + 1
        if kind == "Strip":
            return big, big, ceil_real(as_fraction(T) - 2 * as_fraction(t)), le, 1
        raise AssertionError(kind)

    def contains(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if self.kind == "Rect":
            p = self.rect
            left = (xs > p.x0) if p.left_open else (xs >= p.x0)
            return left & (xs < p.x1) & (ys >= p.y0) & (ys < p.y1)
        x_max, y_max, lo, hi, y_min = self._bounds()
        prod = xs * ys
        return ((xs >= 1) & (ys >= y_min) & (xs <= x_max) & (ys <= y_max)
                & (prod >= lo) & (prod <= hi))

    def lattice_points(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer points of the region as ``(xs, ys)``, x-major ascending."""
        if self.kind == "Rect":
            _, xs, ys = rects_lattice_arrays([self.rect])
        else:
            x_max, y_max, lo, hi, y_min = self._bounds()
            x_max = min(x_max, max(hi, 0))
            if x_max < 1 or hi < 1:
                z = np.zeros(0, dtype=np.int64)
                return z, z
            x = np.arange(1, x_max + 1, dtype=np.int64)
            y_hi = np.minimum(hi // x, y_max)
            y_lo = np.maximum(-((-lo) // x), y_min) if lo > 1 else np.full_like(x, y_min)
            n = np.maximum(y_hi - y_lo + 1, 0)
            xs = np.repeat(x, n)
            ys = _ranges(y_lo, n)
        keep = self.contains(xs, ys)
        return xs[keep], ys[keep]


def region_contains(reg: Region, x: int, y: int) -> bool:
    return bool(reg.contains(np.array([x]), np.array([y]))[0])


def slab_bounds(T: float, k: int) -> tuple[float, float]:
    """Float y-limits of slab ``k >= 1``, identical to those of ``U_k``/``Pi_k``."""
    s = math.sqrt(T)
    return math.ldexp(s, k - 1), math.ldexp(s, k)


def slab_points(T: float, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Lattice points with ``xy < T`` and ``2^(k-1) sqrt T <= y < 2^k sqrt T``."""
    ylo, yhi = slab_bounds(T, k)
    hi = max_below(T)
    y0, y1 = math.ceil(ylo), min(math.ceil(yhi) - 1, hi)
    if y1 < y0 or hi < 1:
        z = np.zeros(0, dtype=np.int64)
        return z, z
    y = np.arange(y0, y1 + 1, dtype=np.int64)
    n = hi // y
    ys = np.repeat(y, n)
    xs = _ranges(np.ones_like(n), n)
    order = np.lexsort((ys, xs))
    return xs[order], ys[order]


def max_slab(T: float) -> int:
    """Largest ``k`` whose slab can hold a point with ``y <= T - 1``."""
    hi = max_below(T)
    k = 0
    while hi >= 1 and math.ldexp(math.sqrt(T), k) <= hi:
        k += 1
    return k


def family_svg(members, T: float, extra=()) -> str:
    """SVG drawing of rectangles (y axis pointing up), 12 significant digits."""
    rects = [m.rect if isinstance(m, FamilyMember) else m for m in members] + list(extra)
    if not rects:
        return '<svg xmlns="http://www.w3.org/2000/svg"/>\n'
    xmax = max(p.x1 for p in rects)
    ymax = max(p.y1 for p in rects)
    g = lambda v: f"{v:.12g}"  # noqa: E731
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {g(xmax)} {g(ymax)}" width="800" height="800" preserveAspectRatio="none">',
        f'<g transform="matrix(1 0 0 -1 0 {g(ymax)})" fill="none" stroke="black" stroke-width="{g(xmax / 800)}">',
    ]
    for p in rects:
        lines.append(f'<rect x="{g(p.x0)}" y="{g(p.y0)}" width="{g(p.width)}" height="{g(p.height)}"/>')
    # the hyperbola itself, sampled
    xs = np.linspace(max(T / ymax, 1e-9), xmax, 200)
    pts = " ".join(f"{g(x)},{g(T / x)}" for x in xs)
    lines.append(f'<polyline points="{pts}" stroke="red"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
