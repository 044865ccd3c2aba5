"""Empirical interval-sum scan for prime moduli.

For each prime ``q`` every non-principal character is scanned over all
intervals.  ``c_fit`` is the largest ratio of the observed maximum to the
``r = 2`` prime-modulus Burgess right-hand side evaluated at the witness
length ``N*``.  A character and its conjugate have the same interval maxima,
so only one of each pair is scanned.
"""
from __future__ import annotations

import csv
import math
from dataclasses import astuple, dataclass, fields

from ..bounds import burgess_rhs
from ..characters import enumerate_characters, is_prime
from ..charsums import max_interval_sum


@dataclass(frozen=True)
class BurgessRow:
    q: int
    n_chars: int
    max_abs: float
    pv_bound: float
    c_fit: float
    chi: int
    M: int
    N: int

    @property
    def pv_ok(self) -> bool:
        return self.max_abs <= self.pv_bound


def burgess_scan(q: int, r: int = 2) -> BurgessRow:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    chars = enumerate_characters(q)
    n = len(chars)  # q - 1, cyclic: index e has conjugate (n - e) % n
    best_abs, best_c, wit = 0.0, 0.0, (0, 0, 0)
    for e in range(1, n // 2 + 1):
        val, (M, N) = max_interval_sum(chars[e], q)
        c = val / burgess_rhs(N, q, r, prime_modulus=True)
        if val > best_abs:
            best_abs = val
        if c > best_c:
            best_c, wit = c, (e, M, N)
    return BurgessRow(q, n - 1, best_abs, math.sqrt(q) * math.log(q), best_c, *wit)


def primes_upto(n: int) -> list[int]:
    return [p for p in range(3, n + 1) if is_prime(p)]


def scan_primes(q_max: int, r: int = 2) -> list[BurgessRow]:
    """Rows for every odd prime ``q <= q_max`` (``q = 2`` has no non-principal character worth scanning)."""
    return [burgess_scan(q, r) for q in primes_upto(q_max)]


HEADER = tuple(f.name for f in fields(BurgessRow))


def _fmt(v) -> str:
    return f"{v:.12g}" if isinstance(v, float) else str(v)


def write_rows(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for row in rows:
            w.writerow([_fmt(v) for v in astuple(row)])


def read_rows(path) -> list[BurgessRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        rd = csv.DictReader(fh)
        return [BurgessRow(int(d["q"]), int(d["n_chars"]), float(d["max_abs"]), float(d["pv_bound"]),
                           float(d["c_fit"]), int(d["chi"]), int(d["M"]), int(d["N"])) for d in rd]
