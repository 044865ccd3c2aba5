"""Numerical checks of the rectangle lemmas on generated families."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..geometry import (
    ChainParams,
    chain_areas_closed,
    chain_rect,
    generate_family,
    lemma5_bound,
    r_op,
    u_op,
)
from .oracles import residual_scan, strip_count


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def random_chains(n: int, seed: int = 0):
    """``n`` random chains: ``x0`` in [1, 1000], ``(x - x0)/x`` in [0.1, 0.9], ``T/x`` in [1, 1e4]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        x0 = float(rng.uniform(1, 1000))
        x = x0 / (1 - rng.uniform(0.1, 0.9))
        T = x * float(10 ** rng.uniform(0, 4))
        out.append(ChainParams(x0, x, T))
    return out


def check_lemma2(chains, n_max: int = 4, rtol: float = 1e-12) -> Check:
    """Closed forms for ``|Phi_n|`` and ``|u(Phi_n)|`` against the directly measured areas."""
    worst = 0.0
    for c in chains:
        for n in range(1, n_max + 1):
            phi = chain_rect(c, n)
            a_phi, a_u = chain_areas_closed(c, n)
            for closed, direct in ((a_phi, phi.area), (a_u, u_op(phi).area)):
                worst = max(worst, abs(closed - direct) / abs(direct))
    return Check("lemma2 closed forms", worst <= rtol, f"{len(chains)} chains x {n_max} links, max rel err {worst:.3e}")


def family_checks(T: float, k: int, depth: int) -> list[Check]:
    """Lemma 3, Lemma 4, the corrected Lemma 5 bound, width ratios and ``2^l`` counts."""
    fam = generate_family(T, k, depth)
    counts = Counter(m.order for m in fam)
    cnt_ok = all(counts[l] == 2**l for l in range(depth + 1))
    ratio_ok = gamma_ok = True
    worst3 = worst4 = worst5 = 0.0
    max_ratio = 0.0
    for m in fam:
        p = m.rect
        a = p.area
        rp, up = r_op(p), u_op(p)
        gamma_ok &= rp.is_on_gamma() and up.is_on_gamma()
        worst3 = max(worst3, rp.area / (a / 4))
        b4 = a / (4 * (1 - 1.5 * p.width / p.x1))
        worst4 = max(worst4, up.area / b4)
        worst5 = max(worst5, a / lemma5_bound(T, k, m.order))
        max_ratio = max(max_ratio, p.ratio)
        ratio_ok &= rp.ratio <= (2 / 3) * p.ratio and up.ratio <= (2 / 3) * p.ratio
    l3, l4, l5 = worst3 <= 1, worst4 <= 1, worst5 <= 1
    tag = f"T={T:g} k={k} depth={depth}"
    return [
        Check(f"family counts 2^l ({tag})", cnt_ok, f"{len(fam)} rectangles"),
        Check(f"on-hyperbola closure ({tag})", gamma_ok, "r and u keep the vertex on xy=T"),
        Check(f"lemma3 |r(P)| <= |P|/4 ({tag})", l3, f"max ratio {worst3:.6f}"),
        Check(f"lemma4 u-bound ({tag})", l4, f"max ratio {worst4:.6f}"),
        Check(f"lemma5 area bound ({tag})", l5, f"max ratio {worst5:.6f}"),
        Check(f"width ratio <= 1/2, child <= 2/3 parent ({tag})", ratio_ok and max_ratio <= 0.5, f"max ratio {max_ratio:.6f}"),
    ]


def strip_grid(Ts=(10**3, 10**4, 10**5), powers=(0.6, 0.75, 0.9)):
    """``(T, t, count, count/(t ln T), count/t)`` on the grid."""
    rows = []
    for T in Ts:
        for a in powers:
            t = T**a
            c = strip_count(T, t)
            rows.append((T, t, c, c / (t * math.log(T)), c / t))
    return rows


def check_lemma6(Ts=(10**3, 10**4, 10**5), limit: float = 5.0) -> Check:
    rows = strip_grid(Ts)
    worst = max(r[3] for r in rows)
    return Check("lemma6 strip count / (t ln T)", worst <= limit, f"max {worst:.4f} over {len(rows)} (T, t)")


def check_divisor_residual(N: int = 10**6, limit: float = 3.0) -> Check:
    r, at = residual_scan(N)
    return Check("divisor residual / sqrt T", r < limit, f"max {r:.6f} at T={at} (N={N})")


def lemma_suite(T: float, k: int, depth: int, chains: int = 1000, seed: int = 0) -> list[Check]:
    out = [check_lemma2(random_chains(chains, seed))]
    out += family_checks(T, k, depth)
    if T >= 10:
        rows = strip_grid((int(T),)) if T < 10**7 else []
        if rows:
            worst = max(r[3] for r in rows)
            out.append(Check(f"lemma6 strip count (T={int(T)})", worst <= 5.0, f"max {worst:.4f}"))
    return out
