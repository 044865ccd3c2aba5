import math

import pytest
from hypothesis import given, strategies as st

from charsum.bounds import (
    COROLLARY_EDGES, BelowRangeError, bound_for, burgess_rhs, corollary1_bound, large_T_parameter, nu_r,
    prime_parameter, prior_bound, small_T_parameter, theorem1_best, theorem1_bound, theorem1_thresholds,
    theorem2_bound, theorem2_threshold, upper_part_bound,
)
from charsum.characters import is_prime


def rel(a, b):
    return abs(a - b) / abs(b)


def test_burgess_examples():
    v = burgess_rhs(100, 101, 2, prime_modulus=True)
    assert v == pytest.approx(10 * 101 ** (3 / 16) * math.log(101) ** 0.5)
    assert v == pytest.approx(51.0, abs=0.05)
    assert burgess_rhs(50, 25, 1) == pytest.approx(5)
    with pytest.raises(ValueError):
        burgess_rhs(10, 30, 4)
    with pytest.raises(ValueError):
        burgess_rhs(10, 21, 2, prime_modulus=True)
    assert burgess_rhs(10, 31, 5, prime_modulus=True) > 0


def test_theorem1_threshold_examples():
    q1, q2 = 7, 31
    mid = q1 ** (4 / 3) * q2 ** (1 / 3)
    b = theorem1_bound(mid, q1, q2, variant=1)
    assert b.value == pytest.approx(q1 * q2 ** (1 / 3), rel=1e-12)
    assert rel(b.value, mid ** 0.75 * q2 ** (1 / 12)) < 1e-9
    mid2 = q1 ** (9 / 8) * q2 ** (3 / 8)
    assert theorem1_bound(mid2, q1, q2, variant=2).value == pytest.approx(q1 ** 0.75 * q2 ** 0.375, rel=1e-12)


def test_theorem1_equal_moduli_branch():
    q = 101
    b = theorem1_bound(q ** 0.8, q, q, variant=1)
    assert b.branch == 1 and b.value == pytest.approx(q ** (0.8 * 2 / 3) * q ** (2 / 9))


def test_theorem1_errors():
    with pytest.raises(ValueError):
        theorem1_bound(100, 11, 7)
    with pytest.raises(BelowRangeError):
        theorem1_bound(1.5, 7, 11)
    with pytest.raises(ValueError):
        theorem1_bound(100, 7, 11, variant=3)


def test_theorem1_edge_tolerance():
    lo, mid = theorem1_thresholds(5, 13, 1)
    assert theorem1_bound(lo * (1 - 1e-14), 5, 13).branch == 1
    assert theorem1_bound(mid * (1 + 1e-14), 5, 13).branch == 1
    assert theorem1_bound(mid * 1.01, 5, 13).branch == 2


def test_corollary_examples():
    q = 97
    b = corollary1_bound(q, q)
    assert b.branch == 2 and b.value == pytest.approx(q ** (7 / 8))
    b = corollary1_bound(q**2, q)
    assert b.branch == 3 and b.value == pytest.approx(q ** (35 / 24))
    b = corollary1_bound(q**3, q)
    assert b.branch == 4 and b.value == pytest.approx(q**2)
    with pytest.raises(BelowRangeError):
        corollary1_bound(q ** 0.5, q)


def test_theorem2_examples():
    assert nu_r(2) == 1 and nu_r(3) == 0
    q1, q2 = 11, 101
    expected = q1 ** (9 / 8) * q2 ** (3 / 8) * math.log(q1) ** 3 * math.log(q2) ** 11
    assert theorem2_threshold(q1, q2, 2) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        theorem2_bound(100, 9, 101)
    with pytest.raises(ValueError):
        theorem2_bound(100, 11, 101, r=1)
    with pytest.raises(BelowRangeError):
        theorem2_bound(1, 11, 101)
    assert theorem2_bound(1e4, 11, 101).branch == 1
    assert theorem2_bound(1e30, 11, 101).branch == 2


def _grid():
    qs = [3, 5, 7, 11, 23, 47, 97, 211, 499, 1009]
    return [(a, b) for a in qs for b in qs if a <= b] + [(q, q) for q in (4, 8, 9, 25, 27, 49, 121, 125, 169, 343)] \
        + [(3, 10**k) for k in range(2, 7)] + [(10, 10**k) for k in range(2, 9)] + [(2, 2**k) for k in range(3, 11)] \
        + [(13, 17 * k) for k in range(1, 16)]


def test_grid_size():
    assert len(_grid()) >= 100


@pytest.mark.parametrize("variant", [1, 2])
def test_theorem1_continuity(variant):
    for q1, q2 in _grid():
        _, mid = theorem1_thresholds(q1, q2, variant)
        b1 = theorem1_bound(mid, q1, q2, variant=variant)
        b2 = theorem1_bound(mid * (1 + 1e-9), q1, q2, variant=variant)
        assert b1.branch == 1 and b2.branch == 2
        # evaluate the second branch exactly at the join
        assert rel(b2.value / (1 + 1e-9) ** b2.exponents["T"], b1.value) < 1e-9


def test_corollary_continuity_all_joins():
    for q in range(3, 400, 4):
        for b, a in enumerate(COROLLARY_EDGES[1:], start=1):
            edge = q**a
            left = corollary1_bound(edge, q)
            right = corollary1_bound(edge * (1 + 1e-10), q)
            assert left.branch == b and right.branch == b + 1
            right_at_edge = right.value / (1 + 1e-10) ** right.exponents["T"]
            assert rel(right_at_edge, left.value) < 1e-9


def test_theorem1_best_matches_corollary():
    for q in (5, 13, 101, 1009, 10007):
        for e in [2 / 3 + 0.01 * i for i in range(0, 158)]:
            T = q**e
            c = corollary1_bound(T, q)
            if c.branch == 4:
                continue
            t = theorem1_best(T, q, q)
            assert rel(t.value, c.value) < 1e-12, (q, e, c.label, t.label)


def test_proof_parameters_balance():
    for T, q2 in [(1e3, 101), (5e4, 997), (1e6, 7919)]:
        t = small_T_parameter(T, q2)
        assert rel(upper_part_bound(T, t, q2, 3), t) < 1e-9
        t = large_T_parameter(T, q2)
        assert rel(upper_part_bound(T, t, q2, 2), t) < 1e-9


def test_prime_parameter_and_prior():
    T, q2 = 1e6, 101
    t = prime_parameter(T, q2, 2)
    assert t == pytest.approx(T ** (2 / 3) * q2 ** (1 / 8) * math.log(q2) ** (-1 / 3))
    assert prior_bound(1e4, 10) == pytest.approx(1e4 ** (13 / 18) * 10 ** (5 / 27))


def test_bound_for_dispatch():
    assert bound_for("thm1.v1", 100, 5, 7).label.startswith("thm1.v1")
    assert bound_for("thm1", 100, 5, 7).value == theorem1_best(100, 5, 7).value
    assert bound_for("cor1", 100, 7, 7).theorem == "cor1"
    assert bound_for("thm2.r3", 1e6, 5, 7).theorem == "thm2.r3"
    with pytest.raises(ValueError):
        bound_for("cor1", 100, 5, 7)
    with pytest.raises(ValueError):
        bound_for("nope", 100, 5, 7)


moduli = st.integers(2, 10**5)


@given(q1=moduli, q2=moduli, variant=st.sampled_from([1, 2]), s=st.floats(0, 1), ds=st.floats(1e-6, 0.5))
def test_property_monotone_in_branch(q1, q2, variant, s, ds):
    q1, q2 = min(q1, q2), max(q1, q2)
    lo, mid = theorem1_thresholds(q1, q2, variant)
    T0 = lo * (mid / lo) ** s if mid > lo else lo
    T1 = T0 * (1 + ds)
    b0, b1 = theorem1_bound(T0, q1, q2, variant=variant), theorem1_bound(T1, q1, q2, variant=variant)
    assert b0.value > 0
    if b0.branch == b1.branch:
        assert b1.value >= b0.value


@given(q=st.integers(2, 10**5), e=st.floats(2 / 3, 4))
def test_property_corollary_positive(q, e):
    b = corollary1_bound(q**e, q)
    lo, hi = b.interval
    assert b.value > 0 and lo * (1 - 1e-12) <= q**e <= hi * (1 + 1e-12)


@given(p=st.sampled_from([p for p in range(3, 500) if is_prime(p)]), r=st.integers(1, 6), N=st.integers(1, 10**4))
def test_property_burgess_positive(p, r, N):
    assert burgess_rhs(N, p, r, prime_modulus=True) > 0
