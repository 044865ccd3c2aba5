"""Parameter sweeps of ``|S(T)|`` against the theorem bounds.

A sweep walks every (primitive ``chi1`` mod ``q1``, primitive ``chi2`` mod
``q2``, ``T``) tuple of a :class:`SweepConfig` grid, computes ``|S|`` with the
hyperbola method (the naive oracle re-checks every ``spot_check``-th tuple),
evaluates the selected bound and records the ratio.  Records come back in
canonical order ``(q1, chi1, q2, chi2, T)`` whatever the worker count, and the
``ms`` column is zero unless timing is requested, so output is reproducible
byte for byte.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from functools import lru_cache

from ..bounds import bound_for
from ..characters import character, count_primitive, is_prime, primitive_characters
from ..charsums import convolution_sum_hyperbola, convolution_sum_naive

FIELDS = ("q1", "chi1", "q2", "chi2", "T", "abs_S", "bound", "ratio", "regime", "ms")


@dataclass(frozen=True)
class SweepRecord:
    q1: int
    chi1: int
    q2: int
    chi2: int
    T: float
    abs_S: float
    bound: float
    ratio: float
    regime: str
    ms: float = 0.0

    def key(self):
        return (self.q1, self.chi1, self.q2, self.chi2, self.T)


class ConfigError(ValueError):
    pass


def _parse_moduli(values) -> list[int]:
    out = set()
    for v in values:
        for part in str(v).split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                a, b = part.split("..")
                out.update(range(int(a), int(b) + 1))
            else:
                out.add(int(part))
    return sorted(out)


def _parse_exponents(v) -> tuple[float, float]:
    a, b = (_frac(p) for p in str(v).split(","))
    return a, b


def _frac(s: str) -> float:
    s = s.strip()
    if "/" in s:
        n, d = s.split("/")
        return float(n) / float(d)
    return float(s)


def _bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {v!r}")


@dataclass
class SweepConfig:
    """Sweep grid.

    ``T_values`` lists explicit ``T``; otherwise ``T_points`` log-spaced values
    run from ``q1^a q2^b`` (``T_lo_exp = (a, b)``) to ``q1^c q2^d``
    (``T_hi_exp``).  ``max_chars`` keeps that many evenly spaced primitive
    characters per modulus (0 keeps all).
    """

    q1: list[int] = field(default_factory=list)
    q2: list[int] = field(default_factory=list)
    primitive: bool = True
    prime_only: bool = False
    ordered: bool = True              # only q1 <= q2
    max_chars: int = 0
    T_values: list[float] = field(default_factory=list)
    T_lo_exp: tuple[float, float] | None = None
    T_hi_exp: tuple[float, float] | None = None
    T_points: int = 0
    theorem: str = "thm1.v1"
    jobs: int = 1
    spot_check: int = 100
    timing: bool = False
    output: str | None = None

    def validate(self) -> None:
        if not self.q1 or not self.q2:
            raise ConfigError("modulus ranges must be non-empty")
        if min(self.q1 + self.q2) < 1 or max(self.q1 + self.q2) > 10**6:
            raise ConfigError("moduli must lie in [1, 10^6]")
        if self.T_values and self.T_points:
            raise ConfigError("give either explicit T values or a T grid, not both")
        if self.T_points:
            if self.T_lo_exp is None or self.T_hi_exp is None:
                raise ConfigError("a T grid needs T_lo_exp and T_hi_exp")
            if self.T_points > 10**4:
                raise ConfigError("T grid too large")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.spot_check < 0:
            raise ConfigError("spot_check must be >= 0")

    @classmethod
    def from_pairs(cls, pairs) -> "SweepConfig":
        """Build from ``(key, value)`` pairs; repeated keys accumulate."""
        multi: dict[str, list[str]] = {}
        for k, v in pairs:
            multi.setdefault(k, []).append(v)
        names = {f.name for f in fields(cls)}
        cfg = cls()
        for k, vs in multi.items():
            if k == "T":
                cfg.T_values = sorted(_frac(x) for v in vs for x in str(v).split(",") if x.strip())
            elif k in ("q1", "q2"):
                setattr(cfg, k, _parse_moduli(vs))
            elif k in ("T_lo_exp", "T_hi_exp"):
                setattr(cfg, k, _parse_exponents(vs[-1]))
            elif k in ("primitive", "prime_only", "ordered", "timing"):
                setattr(cfg, k, _bool(vs[-1]))
            elif k in ("max_chars", "T_points", "jobs", "spot_check"):
                setattr(cfg, k, int(vs[-1]))
            elif k in ("theorem", "output"):
                setattr(cfg, k, vs[-1])
            elif k not in names:
                raise ConfigError(f"unknown config key {k!r}")
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path) -> "SweepConfig":
        pairs = []
        with open(path, encoding="utf-8") as fh:
            for n, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{n}: expected key = value")
                k, v = line.split("=", 1)
                pairs.append((k.strip(), v.strip()))
        return cls.from_pairs(pairs)

    def T_grid(self, q1: int, q2: int) -> list[float]:
        if self.T_values:
            return list(self.T_values)
        if not self.T_points:
            return []
        a, b = self.T_lo_exp
        c, d = self.T_hi_exp
        lo = a * math.log(q1) + b * math.log(q2)
        hi = c * math.log(q1) + d * math.log(q2)
        n = self.T_points
        if n == 1:
            return [math.exp(lo)]
        return [math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(n)]


def _moduli_ok(q: int, cfg: SweepConfig) -> bool:
    if cfg.prime_only and not is_prime(q):
        return False
    if cfg.primitive and count_primitive(q) == 0:
        return False
    return True


@lru_cache(maxsize=None)
def _char_indices(q: int, primitive: bool, max_chars: int) -> tuple[int, ...]:
    if primitive:
        idx = [c.index for c in primitive_characters(q)]
    else:
        idx = list(range(1, len(_all(q)))) if q > 1 else [0]
    if max_chars and len(idx) > max_chars:
        idx = [idx[(i * len(idx)) // max_chars] for i in range(max_chars)]
    return tuple(idx)


def _all(q):
    from ..characters import enumerate_characters

    return enumerate_characters(q)


def tasks(cfg: SweepConfig) -> list[tuple[int, int, int, int, float]]:
    """All ``(q1, chi1, q2, chi2, T)`` tuples in canonical order."""
    cfg.validate()
    out = []
    Q1 = [q for q in cfg.q1 if _moduli_ok(q, cfg)]
    Q2 = [q for q in cfg.q2 if _moduli_ok(q, cfg)]
    for q1 in Q1:
        for i1 in _char_indices(q1, cfg.primitive, cfg.max_chars):
            for q2 in Q2:
                if cfg.ordered and q2 < q1:
                    continue
                grid = sorted(cfg.T_grid(q1, q2))
                for i2 in _char_indices(q2, cfg.primitive, cfg.max_chars):
                    for T in grid:
                        out.append((q1, i1, q2, i2, T))
    return out


def measure(task, theorem: str, check: bool = False, timing: bool = False) -> SweepRecord:
    q1, i1, q2, i2, T = task
    chi1, chi2 = character(q1, i1), character(q2, i2)
    t0 = time.perf_counter()
    S = convolution_sum_hyperbola(chi1, chi2, T)
    ms = (time.perf_counter() - t0) * 1e3 if timing else 0.0
    if check:
        ref = convolution_sum_naive(chi1, chi2, T)
        if not S.approx_equal(ref, 1e-9):
            raise AssertionError(f"hyperbola/naive mismatch at {task}: {S.to_complex()} vs {ref.to_complex()}")
    b = bound_for(theorem, T, q1, q2)
    a = abs(S.to_complex())
    return SweepRecord(q1, i1, q2, i2, T, a, b.value, a / b.value, b.label, ms)


def _run_chunk(args):
    chunk, theorem, timing = args
    return [measure(t, theorem, check, timing) for t, check in chunk]


def sweep(cfg: SweepConfig, jobs: int | None = None) -> list[SweepRecord]:
    """Run the grid; ``jobs`` overrides ``cfg.jobs`` (``CHARSUM_JOBS`` is read by the CLI)."""
    ts = tasks(cfg)
    if not ts:
        return []
    every = cfg.spot_check
    flagged = [(t, bool(every) and i % every == 0) for i, t in enumerate(ts)]
    n_jobs = jobs or cfg.jobs
    if n_jobs <= 1:
        recs = _run_chunk((flagged, cfg.theorem, cfg.timing))
    else:
        size = math.ceil(len(flagged) / (n_jobs * 4))
        chunks = [(flagged[i : i + size], cfg.theorem, cfg.timing) for i in range(0, len(flagged), size)]
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            recs = [r for part in pool.map(_run_chunk, chunks) for r in part]
    recs.sort(key=SweepRecord.key)
    return recs


def fit_constant(records, selector=None) -> float:
    """Largest ratio among the selected records (the empirical implied constant)."""
    sel = [r.ratio for r in records if selector is None or selector(r)]
    if not sel:
        raise ValueError("empty selection")
    return max(sel)


def default_jobs() -> int:
    env = os.environ.get("CHARSUM_JOBS")
    return int(env) if env else 1
