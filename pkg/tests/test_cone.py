"""Cone membership, tangency identities, inclusion sampling, and the
enclosing box."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from littlewood.cone import (
    ConeParams,
    base_tangency,
    cone_contains,
    cone_inclusion_sample,
    parallelepiped_contains,
    phi,
    sample_point_coordinates,
    _sqrt_phi,
)
from littlewood.exactnum import QuadraticSurd, SurdSum, as_surdsum, certified_sign
from littlewood.lattice import LatticePoint, ParameterError, dirichlet_search, f_eval

from nums import SQRT2M1, SQRT3M1, SURD_POOL


AV, BV = as_surdsum(SQRT2M1), as_surdsum(SQRT3M1)


def test_phi_examples():
    assert phi(2, Fraction(1, 2)) == Fraction(1, 2)
    assert phi(10, Fraction(1, 100)) == Fraction(1, 40500)
    values = [phi(N, Fraction(1, 10)) for N in range(2, 30)]
    assert all(a > b for a, b in zip(values, values[1:]))  # decreasing in N


def test_phi_rejects_bad_params():
    with pytest.raises(ParameterError):
        phi(1, Fraction(1, 2))
    with pytest.raises(ParameterError):
        phi(5, Fraction(0))


def test_axis_points_inside():
    params = ConeParams.make(10, Fraction(1, 10))
    for t in (Fraction(1), Fraction(7, 2), Fraction(10)):
        v = cone_contains(SQRT2M1, SQRT3M1, (t, AV * t, BV * t), params)
        assert v.inside


def test_vertex_margin_exactly_zero():
    params = ConeParams.make(10, Fraction(1, 10))
    v = cone_contains(SQRT2M1, SQRT3M1, (Fraction(10), AV * 10, BV * 10), params)
    assert v.inside and v.margin_sign == 0
    assert v.margin.lo == 0 == v.margin.hi


def test_base_circle_margin_exactly_zero():
    # boundary point at x = 1 via the rational unit vector (3/5, 4/5)
    params = ConeParams.make(10, Fraction(1, 10))
    s = _sqrt_phi(params, params.N - 1)
    p = (Fraction(1), AV - Fraction(3, 5) * s, BV - Fraction(4, 5) * s)
    v = cone_contains(SQRT2M1, SQRT3M1, p, params)
    assert v.inside and v.margin_sign == 0
    # lhs at x = 1 equals 2*eps/N exactly
    lhs = (Fraction(3, 5) * s) ** 2 + (Fraction(4, 5) * s) ** 2
    assert lhs.as_fraction() == Fraction(2 * params.epsilon, params.N)


def test_x_range_enforced():
    params = ConeParams.make(10, Fraction(1, 10))
    v = cone_contains(SQRT2M1, SQRT3M1, (Fraction(11), AV * 11, BV * 11), params)
    assert not v.inside and not v.x_in_range
    v = cone_contains(SQRT2M1, SQRT3M1, (Fraction(1, 2), AV / 2, BV / 2), params)
    assert not v.inside and not v.x_in_range


def test_membership_monotone_in_epsilon():
    small = ConeParams.make(10, Fraction(1, 50))
    big = ConeParams.make(10, Fraction(1, 5))
    rng = random.Random(5)
    for _ in range(40):
        x = 1 + Fraction(rng.getrandbits(20), 1 << 20) * 9
        u = Fraction(rng.getrandbits(20), 1 << 20) * 2 - 1
        v = Fraction(rng.getrandbits(20), 1 << 20) * 2 - 1
        s = _sqrt_phi(small, small.N - x)
        p = (x, AV * x - u * s, BV * x - v * s)
        in_small = cone_contains(SQRT2M1, SQRT3M1, p, small).inside
        if in_small:
            assert cone_contains(SQRT2M1, SQRT3M1, p, big).inside


def test_tangency_examples():
    tg = base_tangency(Fraction(1, 2))
    assert (tg.radius * tg.radius).as_fraction() == 1  # radius = 1
    assert tg.discriminant_is_zero and tg.on_hyperbola
    tg = base_tangency(Fraction(2))
    assert tg.radius == as_surdsum(2)  # sqrt(2*2) collapses to the integer 2
    assert tg.point[1] == SurdSum.sqrt(2)


def test_tangency_random_rationals():
    rng = random.Random(99)
    for _ in range(20):
        eps = Fraction(rng.randrange(1, 500), rng.randrange(1, 500))
        tg = base_tangency(eps)
        assert tg.discriminant_is_zero
        assert tg.on_hyperbola
        assert (tg.radius * tg.radius).as_fraction() == 2 * eps
        assert (tg.point[1] * tg.point[2]).as_fraction() == eps


def test_inclusion_sampling_no_violations():
    params = ConeParams.make(12, Fraction(1, 8))
    rep = cone_inclusion_sample(SQRT2M1, SQRT3M1, params, 3000, seed=11)
    assert rep.ok and rep.samples == 3000
    assert rep.crosschecked > 0


def test_inclusion_sampling_deterministic_across_threads():
    params = ConeParams.make(9, Fraction(1, 7))
    r1 = cone_inclusion_sample(SQRT2M1, SQRT3M1, params, 2500, seed=3, threads=1)
    r2 = cone_inclusion_sample(SQRT2M1, SQRT3M1, params, 2500, seed=3, threads=3)
    assert r1.rows == r2.rows


def test_sampled_lattice_like_points_satisfy_f_bound():
    # every sampled point's f, recomputed through f_eval coordinates, obeys
    # 0 < |f| <= eps
    params = ConeParams.make(8, Fraction(1, 9))
    rep = cone_inclusion_sample(SQRT2M1, SQRT3M1, params, 200, seed=4)
    for smp in rep.rows[::17]:
        assert 0 < abs(smp.f) <= params.epsilon


def test_cone_samples_inside_parallelepiped():
    params = ConeParams.make(11, Fraction(1, 6))
    rep = cone_inclusion_sample(SQRT2M1, SQRT3M1, params, 300, seed=8)
    for smp in rep.rows[::7]:
        s = _sqrt_phi(params, params.N - smp.x)
        p = (smp.x, AV * smp.x - smp.u * s, BV * smp.x - smp.v * s)
        assert parallelepiped_contains(SQRT2M1, SQRT3M1, p, params)


def test_dirichlet_point_in_parallelepiped():
    # the box bound sqrt(2 eps / N) dominates the Dirichlet bound 1/sqrt(N)
    # exactly when eps >= 1/2, so membership there is guaranteed
    for eps, N in ((Fraction(1, 2), 40), (Fraction(3), 17), (Fraction(1, 2), 9)):
        params = ConeParams.make(N, eps)
        dp = dirichlet_search(SQRT2M1, SQRT3M1, N)
        assert parallelepiped_contains(SQRT2M1, SQRT3M1, tuple(dp.point), params)


def test_lattice_points_in_cone_satisfy_f_bound():
    # sweep a small box; any lattice point inside the cone must satisfy
    # 0 < |f| <= eps (the inclusion, checked through f_eval); eps is taken
    # large enough that the thin cone actually catches lattice points
    params = ConeParams.make(6, Fraction(2))
    found = 0
    for x in range(1, 7):
        for y in range(0, 7):
            for z in range(0, 9):
                p = LatticePoint(x, y, z)
                if cone_contains(SQRT2M1, SQRT3M1, p, params).inside:
                    found += 1
                    fe = f_eval(SQRT2M1, SQRT3M1, p, params.epsilon)
                    assert fe.sign != 0 and fe.vs_epsilon in ("below", "equal")
    assert found >= 1  # the box does catch cone points at this eps


def test_sample_point_coordinates_consistent():
    params = ConeParams.make(7, Fraction(1, 5))
    rep = cone_inclusion_sample(SQRT2M1, SQRT3M1, params, 50, seed=2)
    smp = rep.rows[0]
    x, y_iv, z_iv = sample_point_coordinates(SQRT2M1, SQRT3M1, params, smp)
    assert x == smp.x
    assert y_iv.width < Fraction(1, 10**20)
