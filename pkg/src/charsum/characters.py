"""Dirichlet characters modulo q.

A character is stored through the CRT decomposition of ``(Z/qZ)^*``: every
prime-power factor contributes its cyclic generators (one for odd p, the pair
``-1, 5`` for ``2^a`` with ``a >= 3``) and the character fixes an exponent
``e`` per generator ``g`` of order ``s``, meaning ``chi(g) = exp(2*pi*i*e/s)``.
Values are returned as exponents ``j`` modulo the character order ``m``
(``chi(n) = exp(2*pi*i*j/m)``) or ``None`` when ``gcd(n, q) > 1``.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cyclosum import CyclotomicSum, lcm

# value-table sentinel for n not coprime to q
ZERO = -1
TABLE_CACHE_MAX = 10**6


def factorize(q: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, primes ascending."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    out = []
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def euler_phi(q: int) -> int:
    r = 1
    for p, a in factorize(q):
        r *= (p - 1) * p ** (a - 1)
    return r


def divisors(q: int) -> list[int]:
    ds = [1]
    for p, a in factorize(q):
        ds = [d * p**i for d in ds for i in range(a + 1)]
    return sorted(ds)


def _cyclic_generator(pa: int, order: int) -> int:
    """Smallest generator of the cyclic group (Z/pa Z)^* of the given order."""
    primes = [r for r, _ in factorize(order)]
    for g in range(2, pa):
        if math.gcd(g, pa) != 1:
            continue
        if all(pow(g, order // r, pa) != 1 for r in primes):
            return g
    raise ArithmeticError(f"no generator mod {pa}")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class PrimePowerComponent:
    """Unit group of ``Z/p^a`` with generators and a discrete-log table.

    ``log_table[r]`` is the exponent vector of ``r`` over ``generators`` for
    units ``r`` and ``-1`` in every slot otherwise.
    """

    p: int
    a: int
    generators: tuple[tuple[int, int], ...]
    log_table: np.ndarray = field(repr=False)

    @property
    def modulus(self) -> int:
        return self.p**self.a

    def reconstruct(self, exps) -> int:
        pa = self.modulus
        r = 1
        for (g, _), e in zip(self.generators, exps):
            r = r * pow(g, int(e), pa) % pa
        return r


@lru_cache(maxsize=None)
def prime_power_component(p: int, a: int) -> PrimePowerComponent:
    pa = p**a
    if p == 2:
        if a == 1:
            gens = ()
        elif a == 2:
            gens = ((pa - 1, 2),)
        else:
            gens = ((pa - 1, 2), (5, 2 ** (a - 2)))
    else:
        order = (p - 1) * p ** (a - 1)
        gens = ((_cyclic_generator(pa, order), order),)

    table = np.full((pa, len(gens)), -1, dtype=np.int64)
    if not gens:
        table = np.zeros((pa, 0), dtype=np.int64)
    else:
        # walk the full exponent grid; every unit is hit exactly once
        ranges = [range(s) for _, s in gens]
        for exps in itertools.product(*ranges):
            r = 1
            for (g, _), e in zip(gens, exps):
                r = r * pow(g, e, pa) % pa
            table[r] = exps
    table.setflags(write=False)
    return PrimePowerComponent(p, a, gens, table)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A Dirichlet character mod ``q`` given by per-generator exponents.

    ``exponents[i][g]`` belongs to generator ``g`` of ``components[i]``.  The
    value table (length ``q``, entries in ``[0, m)`` or ``ZERO``) is built on
    first use under a lock and cached for ``q <= TABLE_CACHE_MAX``.
    """

    q: int
    components: tuple[PrimePowerComponent, ...]
    exponents: tuple[tuple[int, ...], ...]
    index: int = -1
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def flat_exponents(self) -> tuple[int, ...]:
        return tuple(e for exps in self.exponents for e in exps)

    @property
    def m(self) -> int:
        """Order of the character."""
        m = 1
        for comp, exps in zip(self.components, self.exponents):
            for (_, s), e in zip(comp.generators, exps):
                m = lcm(m, s // math.gcd(s, e))
        return m

    def _component_values(self, comp: PrimePowerComponent, exps) -> np.ndarray:
        """Exponent (mod m) of this character's factor on ``Z/p^a``, or ZERO."""
        m = self.m
        logs = comp.log_table
        if logs.shape[1] == 0:
            vals = np.zeros(comp.modulus, dtype=np.int64)
        else:
            w = np.array([e * m // s for (_, s), e in zip(comp.generators, exps)], dtype=np.int64)
            vals = (logs @ w) % m
        vals[np.arange(comp.modulus) % comp.p == 0] = ZERO
        return vals

    def _build_table(self) -> np.ndarray:
        n = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q, dtype=np.int64)
        dead = np.zeros(self.q, dtype=bool)
        for comp, exps in zip(self.components, self.exponents):
            v = self._component_values(comp, exps)[n % comp.modulus]
            dead |= v == ZERO
            out = (out + v) % self.m
        out[dead] = ZERO
        out.setflags(write=False)
        return out

    def table(self) -> np.ndarray:
        """Values on ``0..q-1`` as exponents mod ``m`` (``ZERO`` off the units)."""
        t = self._cache.get("table")
        if t is not None:
            return t
        with self._lock:
            t = self._cache.get("table")
            if t is None:
                t = self._build_table()
                if self.q <= TABLE_CACHE_MAX:
                    self._cache["table"] = t
        return t

    def eval(self, n: int) -> int | None:
        if self.q <= TABLE_CACHE_MAX:
            j = int(self.table()[n % self.q])
            return None if j == ZERO else j
        if math.gcd(n, self.q) != 1:
            return None
        m = self.m
        j = 0
        for comp, exps in zip(self.components, self.exponents):
            logs = comp.log_table[n % comp.modulus]
            for (_, s), e, k in zip(comp.generators, exps, logs):
                j += int(k) * e * m // s
        return j % m

    __call__ = eval

    def value(self, n: int) -> complex:
        j = self.eval(n)
        if j is None:
            return 0j
        return complex(np.exp(2j * np.pi * j / self.m))

    def is_principal(self) -> bool:
        return self.m == 1

    def conductor(self) -> int:
        return conductor(self)

    def is_primitive(self) -> bool:
        return self.conductor() == self.q

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.q == other.q and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.q, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter(q={self.q}, index={self.index}, exponents={self.flat_exponents}, m={self.m})"


def eval(chi: DirichletCharacter, n: int) -> int | None:  # noqa: A001 - mirrors the operation name
    return chi.eval(n)


def character_order(chi: DirichletCharacter) -> int:
    return chi.m


def _components(q: int) -> tuple[PrimePowerComponent, ...]:
    return tuple(prime_power_component(p, a) for p, a in factorize(q))


@lru_cache(maxsize=256)
def _enumerate(q: int) -> tuple[DirichletCharacter, ...]:
    comps = _components(q)
    orders = [s for c in comps for _, s in c.generators]
    chars = []
    for idx, flat in enumerate(itertools.product(*[range(s) for s in orders])):
        exps, pos = [], 0
        for c in comps:
            k = len(c.generators)
            exps.append(tuple(flat[pos : pos + k]))
            pos += k
        chars.append(DirichletCharacter(q, comps, tuple(exps), idx))
    return tuple(chars)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All ``phi(q)`` characters mod ``q``, lexicographic in the exponent tuple.

    Index 0 is the principal character.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return list(_enumerate(q))


def character(q: int, index: int) -> DirichletCharacter:
    chars = _enumerate(q)
    if not 0 <= index < len(chars):
        raise IndexError(f"character index {index} out of range for q={q} ({len(chars)} characters)")
    return chars[index]


def conductor(chi: DirichletCharacter) -> int:
    """Smallest ``d | q`` such that chi is trivial on units ``n = 1 (mod d)``.

    That is exactly the condition for chi to factor through ``(Z/dZ)^*``;
    checked exhaustively over all residues.
    """
    cached = chi._cache.get("conductor")
    if cached is not None:
        return cached
    q = chi.q
    t = chi.table()
    n = np.arange(q)
    units = np.gcd(n, q) == 1
    result = q
    for d in divisors(q):
        sel = units & (n % d == 1 % d)
        if np.all(t[sel] == 0):
            result = d
            break
    chi._cache["conductor"] = result
    return result


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.q


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [c for c in _enumerate(q) if is_primitive(c)]


def count_primitive(q: int) -> int:
    """Classical count ``sum_{d | q} mu(q/d) phi(d)``."""

    def mobius(n: int) -> int:
        f = factorize(n)
        if any(a > 1 for _, a in f):
            return 0
        return -1 if len(f) % 2 else 1

    return sum(mobius(q // d) * euler_phi(d) for d in divisors(q))


def combined_order(chi1: DirichletCharacter, chi2: DirichletCharacter) -> int:
    return lcm(chi1.m, chi2.m)


def full_period_sum(chi: DirichletCharacter) -> CyclotomicSum:
    s = CyclotomicSum(chi.m)
    t = chi.table()
    s.add_many(t[t != ZERO])
    return s
