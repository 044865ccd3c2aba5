import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charsum.characters import enumerate_characters, primitive_characters
from charsum.charsums import region_sum
from charsum.geometry import Region
from charsum.verify.burgess import burgess_scan, read_rows, write_rows
from charsum.verify.decomposition import cover_check, decomposition_sum, min_depth
from charsum.verify.lemmas import check_lemma2, family_checks, lemma_suite, random_chains, strip_grid
from charsum.verify.oracles import (
    EULER_GAMMA, divisor_residual, divisor_sum, divisor_sum_hyperbola, divisor_sums_upto, hyperbola_count,
    omega1_count, strip_count,
)
from charsum.verify.sweep import ConfigError, SweepConfig, SweepRecord, fit_constant, sweep, tasks


def brute_strip(T, t):
    lo = Fraction(T) - 2 * Fraction(t)
    n = math.floor(Fraction(T))
    return sum(1 for x in range(1, n + 1) for y in range(1, n // x + 1) if x * y >= lo)


# ------------------------------------------------------------------ oracles

def test_strip_count_examples():
    assert strip_count(10, 2) == 17 == brute_strip(10, 2)
    assert strip_count(10, 4.5) == 27 == divisor_sum(10)
    assert strip_count(10, 4.6) == divisor_sum(10)


def test_divisor_sum_examples():
    assert divisor_sum(10) == 27
    assert divisor_sum(1) == 1
    assert divisor_sum(100) == sum(100 // x for x in range(1, 101)) == divisor_sum_hyperbola(100)


def test_divisor_residual_examples():
    r = divisor_residual(10)
    assert r == pytest.approx(27 - 10 * math.log(10) - (2 * EULER_GAMMA - 1) * 10)
    assert r == pytest.approx(2.43, abs=0.01)
    assert r / math.sqrt(10) == pytest.approx(0.77, abs=0.01)


def test_sieve_matches_loop():
    D = divisor_sums_upto(500)
    assert all(D[T] == divisor_sum(T) for T in range(1, 501))


@given(st.integers(1, 10**5))
def test_property_divisor_two_ways(T):
    assert divisor_sum(T) == divisor_sum_hyperbola(T) == hyperbola_count(T)


@given(T=st.floats(2, 3000), t=st.floats(0.01, 1500))
def test_property_strip_count(T, t):
    if T <= 300:
        assert strip_count(T, t) == brute_strip(T, t)
    assert strip_count(T, t) <= hyperbola_count(T)


# ------------------------------------------------------------------ decomposition

def test_cover_check_T16():
    rep = cover_check(16, 1, 6)
    assert rep.ok and rep.multiply_covered == 0 and rep.uncovered == 0
    # (3, 5) has product 15 < 16 and is covered by a u-descendant
    assert rep.total == rep.covered == 10
    assert cover_check(16, 5, 6).total == 0


@pytest.mark.parametrize("T", [16, 100, 1000, 2000, 1000.5, 77.3])
def test_cover_all_slabs(T):
    from charsum.geometry import max_slab

    for k in range(1, max_slab(T) + 1):
        rep = cover_check(T, k, min_depth(T))
        assert rep.multiply_covered == 0 and rep.uncovered == 0 and rep.stray == 0


def test_cover_shallow_depth_leaves_points():
    T = 2000
    reps = [cover_check(T, k, 1) for k in (1, 2, 3)]
    assert any(r.uncovered for r in reps)
    with pytest.raises(ValueError):
        decomposition_sum(primitive_characters(3)[0], primitive_characters(5)[0], T, depth=1)


def test_decomposition_examples():
    chi = primitive_characters(3)[0]
    d = decomposition_sum(chi, chi, 16)
    assert d.value.approx_equal(region_sum(chi, chi, Region("Omega1", 16)), 1e-9)
    (one,) = enumerate_characters(1)
    d = decomposition_sum(one, one, 100)
    count = sum(1 for x in range(1, 10) for y in range(1, 100) if x * y < 100)
    assert d.value.to_complex() == count == d.points == omega1_count(100)


@pytest.mark.parametrize("T", [16, 100, 1000])
def test_decomposition_matches_region(T):
    for q1, i1, q2, i2 in [(5, 1, 7, 2), (8, 3, 9, 1), (13, 5, 13, 7)]:
        a, b = enumerate_characters(q1)[i1], enumerate_characters(q2)[i2]
        d = decomposition_sum(a, b, T)
        assert d.value.approx_equal(region_sum(a, b, Region("Omega1", T)), 1e-9)
        assert d.points == omega1_count(T) == d.rect_points + d.strip_points


# ------------------------------------------------------------------ lemmas

def test_lemma2_random_chains():
    c = check_lemma2(random_chains(200, seed=5))
    assert c.passed, c.line()


def test_family_checks_pass():
    for c in family_checks(1000.0, 3, 8):
        assert c.passed, c.line()


def test_lemma_suite_T16():
    checks = lemma_suite(16, 1, 6, chains=100)
    assert all(c.passed for c in checks)
    assert all(c.line().startswith("[PASS]") for c in checks)


def test_strip_grid_shape():
    rows = strip_grid((10**3,))
    assert len(rows) == 3 and all(r[3] <= 5 for r in rows)


# ------------------------------------------------------------------ sweep

def small_cfg(**kw):
    pairs = [("q1", "3, 5"), ("q2", "3, 5"), ("T", "10, 50, 100"), ("theorem", "thm1"), ("spot_check", "1")]
    pairs += [(k, str(v)) for k, v in kw.items()]
    return SweepConfig.from_pairs(pairs)


def test_sweep_cardinality():
    recs = sweep(small_cfg())
    # ordered pairs q1 <= q2: (3,3): 1*1, (3,5): 1*3, (5,5): 3*3
    assert len(recs) == (1 + 3 + 9) * 3
    assert [r.key() for r in recs] == sorted(r.key() for r in recs)
    assert all(r.ratio == pytest.approx(r.abs_S / r.bound) for r in recs)


def test_sweep_unordered_cardinality():
    assert len(tasks(small_cfg(ordered="false"))) == (1 + 3) ** 2 * 3


def test_sweep_empty_grid():
    cfg = SweepConfig.from_pairs([("q1", "3"), ("q2", "5")])
    assert sweep(cfg) == []


def test_sweep_parallel_identical():
    cfg = small_cfg()
    assert sweep(cfg, jobs=1) == sweep(cfg, jobs=3)


def test_sweep_log_grid():
    cfg = SweepConfig.from_pairs([("q1", "5"), ("q2", "7"), ("T_lo_exp", "1/3, 1/3"), ("T_hi_exp", "4/3, 1/3"),
                                  ("T_points", "4"), ("theorem", "thm1.v1")])
    grid = cfg.T_grid(5, 7)
    assert grid[0] == pytest.approx(35 ** (1 / 3)) and grid[-1] == pytest.approx(5 ** (4 / 3) * 7 ** (1 / 3))
    recs = sweep(cfg)
    assert {r.regime for r in recs} == {"thm1.v1.b1"}


@pytest.mark.parametrize("pairs", [
    [("q1", "3")],
    [("q1", "3"), ("q2", "5"), ("bogus", "1")],
    [("q1", "3"), ("q2", "5"), ("T_points", "3")],
    [("q1", "3"), ("q2", "5"), ("jobs", "0")],
    [("q1", "3"), ("q2", "5"), ("primitive", "maybe")],
])
def test_bad_config(pairs):
    with pytest.raises(ConfigError):
        SweepConfig.from_pairs(pairs)


def test_config_file(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("# comment\nq1 = 3..5\nq1 = 7\nq2=11\nT = 20\nT = 40 # trailing\n")
    cfg = SweepConfig.from_file(p)
    assert cfg.q1 == [3, 4, 5, 7] and cfg.T_values == [20.0, 40.0]
    (tmp_path / "bad.cfg").write_text("q1 3\n")
    with pytest.raises(ConfigError):
        SweepConfig.from_file(tmp_path / "bad.cfg")


def rec(ratio, regime="a"):
    return SweepRecord(3, 1, 3, 1, 10.0, ratio, 1.0, ratio, regime)


def test_fit_constant():
    assert fit_constant([rec(0.5), rec(2.0), rec(1.0)]) == 2.0
    assert fit_constant([rec(0.7)]) == 0.7
    rs = [rec(0.5, "a"), rec(2.0, "b"), rec(1.5, "a")]
    parts = [fit_constant(rs, lambda r, g=g: r.regime == g) for g in ("a", "b")]
    assert max(parts) == fit_constant(rs)
    with pytest.raises(ValueError):
        fit_constant([])
    with pytest.raises(ValueError):
        fit_constant(rs, lambda r: False)


# ------------------------------------------------------------------ burgess

def test_burgess_scan_small(tmp_path):
    row = burgess_scan(5)
    assert row.max_abs == pytest.approx(2) and row.pv_ok and row.n_chars == 3
    rows = [burgess_scan(p) for p in (3, 7, 11, 101)]
    write_rows(rows, tmp_path / "b.csv")
    back = read_rows(tmp_path / "b.csv")
    assert [r.q for r in back] == [3, 7, 11, 101]
    assert all(b.c_fit == pytest.approx(r.c_fit, rel=1e-11) for b, r in zip(back, rows))
    with pytest.raises(ValueError):
        burgess_scan(9)


@pytest.mark.parametrize("p", [7, 13, 31, 97])
def test_burgess_conjugate_reuse(p):
    from charsum.bounds import burgess_rhs
    from charsum.charsums import max_interval_sum

    full = []
    for chi in enumerate_characters(p)[1:]:
        v, (M, N) = max_interval_sum(chi, p)
        full.append((v, v / burgess_rhs(N, p, 2, prime_modulus=True)))
    row = burgess_scan(p)
    assert row.max_abs == pytest.approx(max(v for v, _ in full), rel=1e-12)
    assert row.c_fit == pytest.approx(max(c for _, c in full), rel=1e-12)
