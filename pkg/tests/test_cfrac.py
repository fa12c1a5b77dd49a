"""Continued-fraction layer: expansions, convergents against a bottom-up
oracle, exact error terms, growth bounds, and approximation metrics."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from littlewood.cfrac import (
    CFSpec,
    InternalInconsistencyError,
    ProfileViolationError,
    bad_constant_scan,
    bad_constant_estimate,
    cf_expand,
    convergent,
    convergents,
    error_term,
    growth_bounds_check,
    joint_bad_profile,
    lcm_growth_profile,
    lcm_time,
    levy_quotient,
    LEVY_AE_LOG,
)
from littlewood.exactnum import QuadraticSurd, SurdSum, as_surdsum, certified_sign

from nums import GOLDENM1, SPEC_GOLDENM1, SPEC_SQRT2M1, SPEC_SQRT3M1, SQRT2M1


def eval_cf(quotients) -> Fraction:
    """Oracle: bottom-up evaluation of a finite continued fraction."""
    acc = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        acc = a + 1 / acc
    return acc


# -- expansion ---------------------------------------------------------------


def test_expand_sqrt2():
    spec = CFSpec.from_surd(QuadraticSurd.sqrt_of(2))
    assert cf_expand(spec, 5) == [1, 2, 2, 2, 2]


def test_expand_golden():
    spec = CFSpec.from_surd(QuadraticSurd.make(1, 1, 2, 5))
    assert cf_expand(spec, 4) == [1, 1, 1, 1]


def test_expand_rational_truncates():
    spec = CFSpec.from_rational(Fraction(7, 5))
    assert cf_expand(spec, 10) == [1, 2, 2]  # Euclidean algorithm, canonical


def test_expand_sqrt3_minus_1():
    assert cf_expand(SPEC_SQRT3M1, 7) == [0, 1, 2, 1, 2, 1, 2]


def test_periodic_roundtrip_values():
    # cf:[0;(2)] is sqrt(2) - 1; checked as exact surd equality
    assert CFSpec.from_periodic([0], [2]).value() == SQRT2M1
    assert CFSpec.from_periodic([0], [1]).value() == GOLDENM1
    assert CFSpec.from_periodic([0], [1, 2]).value() == QuadraticSurd.make(-1, 1, 1, 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 9), st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_periodic_value_expands_back(a0, period):
    spec = CFSpec.from_periodic([a0], period)
    want = ([a0] + period * 4)[: 4 * len(period)]
    assert cf_expand(spec, len(want)) == want


@settings(max_examples=120, deadline=None)
@given(
    st.integers(-9, 9),
    st.integers(1, 9),
    st.integers(1, 9),
    st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13, 14, 15]),
)
def test_surd_expansion_matches_float_oracle(a, b, c, d):
    # independent oracle: floor/invert on a 50-digit float; ties cannot
    # occur for these small irrational inputs at this precision and depth
    import mpmath

    mpmath.mp.dps = 50
    spec = CFSpec.from_surd(QuadraticSurd.make(a, b, c, d))
    got = cf_expand(spec, 10)
    x = (mpmath.mpf(a) + b * mpmath.sqrt(d)) / c
    want = []
    for _ in range(10):
        fl = mpmath.floor(x)
        want.append(int(fl))
        x = 1 / (x - fl)
    assert got == want


# -- convergents -------------------------------------------------------------


def test_convergents_sqrt2m1():
    got = [(c.p, c.q) for c in convergents([0, 2, 2, 2, 2])]
    # oracle: eval_cf of each truncation
    assert [eval_cf([0, 2, 2, 2, 2][: k + 1]) for k in range(5)] == [
        Fraction(p, q) for p, q in got
    ]
    assert got == [(0, 1), (1, 2), (2, 5), (5, 12), (12, 29)]


def test_convergents_fibonacci():
    got = [(c.p, c.q) for c in convergents([1, 1, 1, 1, 1])]
    assert got == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]


def test_single_quotient():
    assert [(c.p, c.q) for c in convergents([7])] == [(7, 1)]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 30), st.lists(st.integers(1, 30), min_size=1, max_size=40))
def test_convergents_match_oracle_and_are_reduced(a0, rest):
    quots = [a0] + rest
    convs = convergents(quots)
    for k, c in enumerate(convs):
        assert Fraction(c.p, c.q) == eval_cf(quots[: k + 1])
        assert math.gcd(c.p, c.q) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10), st.lists(st.integers(1, 10), min_size=2, max_size=60))
def test_determinant_identity(a0, rest):
    convs = convergents([a0] + rest)
    for prev, cur in zip(convs, convs[1:]):
        n = cur.n
        assert cur.p * prev.q - prev.p * cur.q == (-1) ** (n + 1)


def test_even_odd_interleaving():
    # c_0 < c_2 < ... < alpha < ... < c_3 < c_1, by exact comparisons
    alpha = SPEC_SQRT2M1
    convs = convergents(cf_expand(alpha, 12))
    value = alpha.value()
    evens = [c for c in convs if c.n % 2 == 0]
    odds = [c for c in convs if c.n % 2 == 1]
    for a, b in zip(evens, evens[1:]):
        assert a.as_fraction() < b.as_fraction()
    for a, b in zip(odds, odds[1:]):
        assert a.as_fraction() > b.as_fraction()
    for c in evens:
        assert value.compare_rational(c.as_fraction()) == 1
    for c in odds:
        assert value.compare_rational(c.as_fraction()) == -1


def test_q_monotone_bounded_by_quotient_bound():
    convs = convergents(cf_expand(SPEC_SQRT3M1, 40))
    M = 2
    for prev, cur in zip(convs, convs[1:]):
        assert prev.q <= cur.q <= (M + 1) * prev.q


# -- error terms -------------------------------------------------------------


def test_error_term_examples():
    e0 = error_term(SPEC_SQRT2M1, 0)
    assert e0.sign == 1
    # 1/(2*1*2) <= e_0 = sqrt(2)-1 <= 1/(1*2), exactly
    assert e0.bounds_ok()
    assert certified_sign(e0.value - Fraction(1, 4)) >= 0
    assert certified_sign(e0.value - Fraction(1, 2)) <= 0

    e1 = error_term(SPEC_GOLDENM1, 1)
    assert e1.sign == -1


def test_error_sandwich_many_orders():
    for spec in (SPEC_SQRT2M1, SPEC_SQRT3M1, SPEC_GOLDENM1):
        for n in range(0, 30):
            e = error_term(spec, n)
            assert e.sign == (1 if n % 2 == 0 else -1)
            assert e.bounds_ok()


# -- growth bounds, Levy, bad constants --------------------------------------


def test_growth_bounds():
    assert growth_bounds_check(SPEC_SQRT2M1, 2, 20).ok
    rep = growth_bounds_check(SPEC_GOLDENM1, 1, 20)
    assert rep.ok and rep.lam == 4
    # q_n are Fibonacci numbers for the golden-type expansion
    convs = convergents(cf_expand(SPEC_GOLDENM1, 21))
    fib = [1, 1]
    while len(fib) < 25:
        fib.append(fib[-1] + fib[-2])
    assert [c.q for c in convs] == fib[:21]


def test_growth_profile_violation():
    with pytest.raises(ProfileViolationError):
        growth_bounds_check(SPEC_SQRT2M1, 1, 20)


def test_levy_quotients():
    # 1% here is absolute (percentage points on the log scale); the exact
    # n = 40 quotients sit 0.004-0.009 below their limits
    assert abs(levy_quotient(SPEC_GOLDENM1, 40) - math.log((1 + 5**0.5) / 2)) < 0.01
    spec = CFSpec.from_periodic([0], [2])
    assert abs(levy_quotient(spec, 40) - math.log(1 + 2**0.5)) < 0.01
    assert abs(LEVY_AE_LOG - 1.1865691104156255) < 1e-12


def test_bad_constant_scan_golden():
    best, argq = bad_constant_scan(SPEC_GOLDENM1, 100)
    # oracle: exhaustive scan; the minimum is at q = 1 with value
    # 1 - (golden - 1) = (3 - sqrt(5))/2 ~ 0.382 (the Fibonacci subsequence
    # q_n^2 |e_n| decreases toward 1/sqrt(5) ~ 0.447 but stays above it)
    assert argq == 1
    assert best == as_surdsum(Fraction(3, 2)) - SurdSum.sqrt(5, Fraction(1, 2))
    est = bad_constant_estimate(SPEC_GOLDENM1, 100)
    assert Fraction(38, 100) < est < Fraction(39, 100)


def test_bad_constant_scan_sqrt2():
    best, argq = bad_constant_scan(SPEC_SQRT2M1, 100)
    # oracle: exhaustive scan; minimum 2*||2*alpha|| = 6 - 4*sqrt(2) ~ 0.343
    assert argq == 2
    assert best == as_surdsum(6) - SurdSum.sqrt(2, 4)


def test_bad_constant_q1():
    best, argq = bad_constant_scan(SPEC_SQRT3M1, 1)
    assert argq == 1
    # ||sqrt(3) - 1|| = |sqrt(3) - 2| = 2 - sqrt(3)
    assert best == as_surdsum(2) - SurdSum.sqrt(3)


def test_bad_constant_positive_lower_bound():
    for spec in (SPEC_SQRT2M1, SPEC_SQRT3M1, SPEC_GOLDENM1):
        assert bad_constant_estimate(spec, 50) > 0


# -- lcm times ---------------------------------------------------------------


def test_convergent_beyond_rational_expansion():
    from littlewood.cfrac import CFError

    with pytest.raises(CFError):
        convergent(CFSpec.from_rational(Fraction(7, 5)), 10)


def test_lcm_time_example():
    assert convergent(SPEC_SQRT2M1, 2).q == 5
    assert convergent(SPEC_SQRT3M1, 2).q == 3
    assert lcm_time(SPEC_SQRT2M1, SPEC_SQRT3M1, 1) == 15


def test_lcm_time_equal_and_coprime():
    assert lcm_time(SPEC_SQRT2M1, SPEC_SQRT2M1, 3) == convergent(SPEC_SQRT2M1, 6).q
    qa = convergent(SPEC_SQRT2M1, 4).q
    qb = convergent(SPEC_GOLDENM1, 4).q
    if math.gcd(qa, qb) == 1:
        assert lcm_time(SPEC_SQRT2M1, SPEC_GOLDENM1, 2) == qa * qb


def test_lcm_time_bounds_hold():
    for n in range(1, 15):
        t = lcm_time(SPEC_SQRT2M1, SPEC_SQRT3M1, n)
        prof = joint_bad_profile(SPEC_SQRT2M1, SPEC_SQRT3M1, Q=1)
        assert 2 ** (n - 1) <= t <= prof.lam ** (2 * n)


def test_lcm_growth_profile():
    prof = lcm_growth_profile(SPEC_SQRT2M1, SPEC_SQRT3M1, 16)
    assert 0 < prof.liminf_estimate <= prof.limsup_estimate
    assert len(prof.quotients) == 16


def test_joint_profile():
    prof = joint_bad_profile(SPEC_SQRT2M1, SPEC_SQRT3M1, Q=100)
    assert prof.M == 2 and prof.lam == 9
    assert prof.C_estimate > 0
