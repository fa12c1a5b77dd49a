"""Entry times: the membership quadratic, its discriminant, the certified
root against a bisection oracle, angles, and the cubic variant."""

import random
from fractions import Fraction

import pytest

from littlewood.cfrac import CFSpec, ErrorTerm, lcm_time
from littlewood.cone import ConeParams, cone_contains
from littlewood.entrytime import (
    ApproxLine,
    NontransversalConfigurationError,
    angle,
    approx_line,
    cubic_entry_time,
    discriminant,
    discriminant_rearranged,
    entry_time,
    entry_time_bisected,
    line_gamma,
    transversality_check,
)
from littlewood.exactnum import QuadraticSurd, SurdSum, as_surdsum, certified_sign
from littlewood.lattice import DirichletPoint, LatticePoint, dirichlet_search

from nums import (
    SPEC_GOLDENM1,
    SPEC_SQRT2M1,
    SPEC_SQRT3M1,
    SQRT2M1,
    SQRT3M1,
    TEST_PAIRS,
    transversal_config,
)


def _line(n=2, N=10):
    p0 = dirichlet_search(SQRT2M1, SQRT3M1, N)
    return approx_line(SPEC_SQRT2M1, SPEC_SQRT3M1, n, p0)


# -- the line ----------------------------------------------------------------


def test_gamma_endpoints():
    line = _line()
    assert line_gamma(line, Fraction(0)) == (3, 1, 2)
    x, y, z = line_gamma(line, Fraction(line.x0 - 1))
    assert x == 1


def test_gamma_at_lcm_time_is_integral():
    for a_spec, b_spec in TEST_PAIRS:
        p0 = dirichlet_search(a_spec.value(), b_spec.value(), 50)
        for n in range(1, 9):
            line = approx_line(a_spec, b_spec, n, p0)
            t_n = lcm_time(a_spec, b_spec, n)
            x, y, z = line_gamma(line, Fraction(t_n))
            assert x.denominator == y.denominator == z.denominator == 1


# -- transversality ----------------------------------------------------------


def test_transversality_numeric_example():
    # N = 2, eps = 1/2, max e = 1/8: sqrt(2) <= 4
    assert transversality_check(2, Fraction(1, 2), Fraction(1, 8), Fraction(1, 8))


def test_transversality_degenerate_rational():
    assert transversality_check(7, Fraction(1, 100), Fraction(0), Fraction(0))


def test_transversality_eventually_passes_in_n():
    # e_2n -> 0, so for fixed N, eps the condition holds from some n on
    N, eps = 51, Fraction(1, 100)
    p0 = dirichlet_search(SQRT2M1, SQRT3M1, N)
    results = []
    for n in range(1, 7):
        line = approx_line(SPEC_SQRT2M1, SPEC_SQRT3M1, n, p0)
        results.append(transversality_check(N, eps, line.e_alpha, line.e_beta))
    assert results == sorted(results)  # False ... False True ... True
    assert results[-1] is True
    assert results[2] is False  # n = 3 still fails at N = 51 for this pair


# -- discriminant ------------------------------------------------------------


def test_discriminant_axis_degenerate_is_zero():
    zero = SurdSum()
    p0 = DirichletPoint(LatticePoint(3, 1, 2), 10, zero, zero)
    e0 = ErrorTerm(4, zero, 0, 1, 1)
    line = ApproxLine(
        2, p0, SQRT2M1, SQRT3M1, Fraction(1, 3), Fraction(2, 3), 3, 3, 1, 2, e0, e0
    )
    params = ConeParams.make(10, Fraction(1, 10))
    assert certified_sign(discriminant(line, params)) == 0
    rep = entry_time(line, params)
    assert rep.already_inside and rep.tau.lo == 0 == rep.tau.hi


def test_discriminant_rearrangement_identity():
    rng = random.Random(12)
    for _ in range(10):
        _, _, line, params, _ = transversal_config(rng, require_segment=False)
        d1 = discriminant(line, params)
        d2 = discriminant_rearranged(line, params)
        assert (d1 - d2).is_zero()  # exact algebraic identity


def test_discriminant_positive_under_transversality():
    rng = random.Random(13)
    for _ in range(15):
        _, _, line, params, rep = transversal_config(rng, require_segment=False)
        assert rep.d_n_sign == 1
        assert certified_sign(rep.denominator) == 1


# -- entry time --------------------------------------------------------------


def test_nontransversal_raises():
    line = _line(n=1, N=51)
    params = ConeParams.make(51, Fraction(1, 100))
    assert not transversality_check(51, Fraction(1, 100), line.e_alpha, line.e_beta)
    with pytest.raises(NontransversalConfigurationError):
        entry_time(line, params)


def test_entry_time_matches_bisection_oracle():
    rng = random.Random(14)
    for _ in range(20):
        _, _, line, params, rep = transversal_config(rng)
        lo, hi = entry_time_bisected(line, params, tol=Fraction(1, 10**11))
        mid = rep.tau.midpoint()
        assert lo - Fraction(1, 10**9) <= mid <= hi + Fraction(1, 10**9)
        scale = max(abs(mid), Fraction(1))
        assert (hi - lo) <= scale  # sanity on the bracket itself
        assert rep.tau.width <= Fraction(1, 10**12) * scale


def test_entry_time_roots_ordered():
    rng = random.Random(15)
    for _ in range(10):
        _, _, line, params, rep = transversal_config(rng, require_segment=False)
        assert rep.t_minus is not None and rep.t_plus is not None
        assert rep.t_minus.hi < rep.t_plus.lo


def test_tau_zero_when_inside():
    # enlarge eps so the membership inequality already holds at t = 0
    rng = random.Random(16)
    _, _, line, params, rep = transversal_config(rng, require_segment=False)
    big = ConeParams.make(params.N, params.epsilon * 10**6)
    rep_big = entry_time(line, big)
    assert rep_big.already_inside and rep_big.tau.lo == 0


def test_tau_monotone_in_epsilon():
    rng = random.Random(17)
    for _ in range(8):
        _, _, line, params, rep = transversal_config(rng)
        bigger = ConeParams.make(params.N, params.epsilon * 3)
        rep_big = entry_time(line, bigger)
        # exact: tau(eps') <= (any rational upper bound of tau(eps))
        assert rep_big.tau_vs(rep.tau.hi)


def test_quadratic_formula_consistency():
    # evaluating A t^2 + 2 B t + C over the certified t- and t+ intervals
    # (interval arithmetic end to end) must bracket zero
    from littlewood.entrytime import _membership_coeffs

    rng = random.Random(22)
    for _ in range(8):
        _, _, line, params, rep = transversal_config(rng, require_segment=False)
        A, B, C = _membership_coeffs(line, params)
        bits = 256
        a_iv, b_iv, c_iv = A.interval(bits), B.interval(bits), C.interval(bits)
        for root in (rep.t_minus, rep.t_plus):
            q_iv = a_iv * (root * root) + b_iv.scale(2) * root + c_iv
            assert q_iv.contains_zero()


def test_substitute_back_on_boundary():
    rng = random.Random(18)
    for _ in range(6):
        a_spec, b_spec, line, params, rep = transversal_config(rng)
        point = line_gamma(line, rep.tau.midpoint())
        v = cone_contains(a_spec.value(), b_spec.value(), point, params, bits=256)
        assert v.margin.contains_zero() or abs(float(v.margin.midpoint())) < 1e-10


# -- angle -------------------------------------------------------------------


def test_angle_decreases_and_cauchy_schwarz():
    p0 = dirichlet_search(SQRT2M1, SQRT3M1, 10)
    thetas = []
    for n in (1, 3, 5):
        rep = angle(approx_line(SPEC_SQRT2M1, SPEC_SQRT3M1, n, p0))
        assert rep.cos_at_most_one
        assert rep.theta_lo >= 0
        thetas.append(rep.theta)
    assert thetas[2] < thetas[0]
    assert thetas[2] < 1e-4  # convergents close: the angle collapses


def test_angle_exact_direction_is_zero():
    # direction equal to (1, alpha, beta) itself: cos = 1, theta = 0
    zero = SurdSum()
    p0 = DirichletPoint(LatticePoint(3, 1, 2), 10, zero, zero)
    e0 = ErrorTerm(2, zero, 0, 1, 1)
    line = ApproxLine(
        1, p0, QuadraticSurd.from_rational(Fraction(1, 3)),
        QuadraticSurd.from_rational(Fraction(2, 7)),
        Fraction(1, 3), Fraction(2, 7), 3, 7, 1, 2, e0, e0,
    )
    rep = angle(line)
    assert rep.theta_lo == 0.0 and rep.theta_hi < 1e-14


# -- cubic variant -----------------------------------------------------------


def test_cubic_entry_zero_when_eps_dominates():
    line = _line()
    rep = cubic_entry_time(line, Fraction(10))
    assert rep.entered_at_zero and rep.tau_cubic == (Fraction(0), Fraction(0))


def test_cubic_entry_at_most_cone_entry():
    rng = random.Random(19)
    hit = 0
    for _ in range(10):
        a_spec, b_spec, line, params, rep = transversal_config(rng)
        cub = cubic_entry_time(line, params.epsilon, rep)
        if cub.tau_cubic is None:
            continue  # the segment may end before |f| <= eps is reached
        hit += 1
        assert cub.at_most_tau_cone
    assert hit >= 3


def test_cubic_no_entry_notice():
    # tiny eps on a segment that never reaches |f| <= eps
    line = _line(n=2, N=10)
    rep = cubic_entry_time(line, Fraction(1, 10**12))
    assert rep.no_entry and rep.tau_cubic is None


def test_cubic_roots_certified():
    rng = random.Random(21)
    _, _, line, params, rep = transversal_config(rng)
    cub = cubic_entry_time(line, params.epsilon, rep)
    for lo, hi, level in cub.boundary_roots:
        assert hi - lo <= Fraction(1, 10**12)
        assert level in (-1, 1)
