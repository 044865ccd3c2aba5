"""Exact finite sums of roots of unity.

A :class:`CyclotomicSum` of order ``m`` is a multiplicity histogram
``counts[j]`` over exponent classes ``j mod m``; its value is
``sum(counts[j] * exp(2*pi*i*j/m))``.  Histograms are not canonical (the
relation ``1 + z + ... + z^(m-1) = 0`` makes many histograms equal in value),
so equality of *values* coming from different algorithms is checked through
the complex embedding, while ``==`` compares histograms exactly.
"""
from __future__ import annotations

import math
import sys

import numpy as np

# Above this order the histogram is kept sparse.
DENSE_MAX = 10_000


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class CyclotomicSum:
    """Integer multiplicity histogram over the ``m``-th roots of unity.

    Dense (``numpy.int64`` array) for ``m <= DENSE_MAX``.  Above that the
    histogram is a list of ``(exponents, counts)`` chunks merged lazily into
    sorted unique exponents.  ``add_term``/``add_many`` mutate in place and
    return ``self``; arithmetic operators return new objects.
    """

    __slots__ = ("m", "_dense", "_chunks")

    def __init__(self, m: int = 1, counts=None):
        if m < 1:
            raise ValueError(f"order must be >= 1, got {m}")
        self.m = int(m)
        self._dense = None
        self._chunks = None
        if self.m <= DENSE_MAX:
            self._dense = np.zeros(self.m, dtype=np.int64)
        else:
            self._chunks = []
        if counts is not None:
            if isinstance(counts, dict):
                for j, c in counts.items():
                    self.add_term(int(j), int(c))
            else:
                arr = np.asarray(counts, dtype=np.int64)
                if arr.shape != (self.m,):
                    raise ValueError(f"expected {self.m} counts, got shape {arr.shape}")
                nz = np.flatnonzero(arr)
                self.add_many(nz, arr[nz])

    # ------------------------------------------------------------------ build
    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    def add_term(self, j: int, mult: int = 1) -> "CyclotomicSum":
        """Add ``mult * zeta_m^j`` (``mult`` may be negative)."""
        if not 0 <= j < self.m:
            raise ValueError(f"exponent {j} out of range [0, {self.m})")
        if self._dense is not None:
            self._dense[j] += mult
        else:
            self._chunks.append((np.array([j], dtype=np.int64), np.array([mult], dtype=np.int64)))
        return self

    def add_many(self, exponents, mults=None) -> "CyclotomicSum":
        """Vectorised ``add_term`` over arrays of exponents (already reduced mod m)."""
        raw = np.asarray(exponents, dtype=np.int64)
        idx = raw.ravel()
        if idx.size == 0:
            return self
        if idx.min() < 0 or idx.max() >= self.m:
            raise ValueError(f"exponent out of range [0, {self.m})")
        if mults is None:
            w = None
        else:
            w = np.broadcast_to(np.asarray(mults, dtype=np.int64), raw.shape).ravel()
        if self._dense is not None:
            if w is None:
                self._dense += np.bincount(idx, minlength=self.m)
            else:
                # float weights are exact while partial sums stay below 2**53
                self._dense += np.rint(np.bincount(idx, weights=w, minlength=self.m)).astype(np.int64)
        else:
            self._chunks.append((idx.copy(), np.ones(idx.size, np.int64) if w is None else w.copy()))
        return self

    def _merged(self) -> tuple[np.ndarray, np.ndarray]:
        if len(self._chunks) != 1 or not getattr(self._chunks[0], "merged", False):
            if self._chunks:
                idx = np.concatenate([c[0] for c in self._chunks])
                w = np.concatenate([c[1] for c in self._chunks])
                keys, inv = np.unique(idx, return_inverse=True)
                tot = np.zeros(keys.size, dtype=np.int64)
                np.add.at(tot, inv, w)
                nz = tot != 0
                merged = _Merged((keys[nz], tot[nz]))
            else:
                merged = _Merged((np.zeros(0, np.int64), np.zeros(0, np.int64)))
            self._chunks = [merged]
        return self._chunks[0]

    def copy(self) -> "CyclotomicSum":
        out = CyclotomicSum.__new__(CyclotomicSum)
        out.m = self.m
        out._dense = None if self._dense is None else self._dense.copy()
        out._chunks = None if self._chunks is None else list(self._chunks)
        return out

    # ------------------------------------------------------------ inspection
    def items(self):
        """``(j, count)`` pairs with nonzero count, ascending in ``j``."""
        j, c = self.arrays()
        return list(zip(j.tolist(), c.tolist()))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Nonzero exponents (ascending) and their counts."""
        if self._dense is not None:
            nz = np.flatnonzero(self._dense)
            return nz, self._dense[nz]
        k, c = self._merged()
        return k, c

    def counts(self) -> np.ndarray:
        """Dense copy of the histogram (length ``m``)."""
        if self._dense is not None:
            return self._dense.copy()
        out = np.zeros(self.m, dtype=np.int64)
        k, c = self._merged()
        out[k] = c
        return out

    def total_terms(self) -> int:
        """Sum of absolute multiplicities (the size of the addition ledger)."""
        _, c = self.arrays()
        return int(np.abs(c).sum())

    # ------------------------------------------------------------ evaluation
    def to_complex(self) -> complex:
        j, c = self.arrays()
        if j.size == 0:
            return 0j
        ang = (2.0 * np.pi / self.m) * j
        re = float(np.dot(c.astype(np.float64), np.cos(ang)))
        im = float(np.dot(c.astype(np.float64), np.sin(ang)))
        return complex(re, im)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def default_tol(self, other: "CyclotomicSum | None" = None) -> float:
        n = self.total_terms() + (other.total_terms() if other is not None else 0)
        return 64.0 * max(n, 1) * sys.float_info.epsilon

    def approx_equal(self, other: "CyclotomicSum", tol: float | None = None) -> bool:
        if tol is None:
            tol = self.default_tol(other)
        if tol <= 0:
            raise ValueError("tol must be positive")
        return abs(self.to_complex() - other.to_complex()) <= tol

    # ------------------------------------------------------------ arithmetic
    def lift(self, m_new: int) -> "CyclotomicSum":
        """Re-express in order ``m_new`` (a multiple of ``m``); the value is unchanged."""
        if m_new < 1 or m_new % self.m:
            raise ValueError(f"{m_new} is not a multiple of {self.m}")
        out = CyclotomicSum(m_new)
        j, c = self.arrays()
        out.add_many(j * (m_new // self.m), c)
        return out

    def rotate(self, j: int) -> "CyclotomicSum":
        """Multiply by ``zeta_m^j``."""
        out = CyclotomicSum(self.m)
        idx, c = self.arrays()
        out.add_many((idx + j) % self.m, c)
        return out

    def _common(self, other: "CyclotomicSum"):
        m = lcm(self.m, other.m)
        a = self if self.m == m else self.lift(m)
        b = other if other.m == m else other.lift(m)
        return a, b

    def __add__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        a, b = self._common(other)
        out = a.copy()
        j, c = b.arrays()
        return out.add_many(j, c)

    def __neg__(self) -> "CyclotomicSum":
        out = CyclotomicSum(self.m)
        j, c = self.arrays()
        return out.add_many(j, -c)

    def __sub__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            out = CyclotomicSum(self.m)
            j, c = self.arrays()
            return out.add_many(j, c * int(other))
        m = lcm(self.m, other.m)
        j1, c1 = self.arrays()
        j2, c2 = other.arrays()
        out = CyclotomicSum(m)
        if j1.size and j2.size:
            idx = (j1[:, None] * (m // self.m) + j2[None, :] * (m // other.m)) % m
            out.add_many(idx, np.outer(c1, c2))
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclotomicSum):
            return NotImplemented
        return self.m == other.m and self.items() == other.items()

    def __hash__(self):
        return hash((self.m, tuple(self.items())))

    def __repr__(self) -> str:
        terms = ", ".join(f"{j}:{c}" for j, c in self.items())
        return f"CyclotomicSum(m={self.m}, {{{terms}}})"


class _Merged(tuple):
    merged = True


def add_term(s: CyclotomicSum, j: int, mult: int = 1) -> CyclotomicSum:
    return s.add_term(j, mult)


def lift(s: CyclotomicSum, m_new: int) -> CyclotomicSum:
    return s.lift(m_new)


def to_complex(s: CyclotomicSum) -> complex:
    return s.to_complex()


def approx_equal(s1: CyclotomicSum, s2: CyclotomicSum, tol: float | None = None) -> bool:
    return s1.approx_equal(s2, tol)
