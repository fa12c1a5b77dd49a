"""The half-cone around the irrational axis line R*(1, alpha, beta):

    C(N, eps) = { (x,y,z) : 1 <= x <= N,
                  (alpha*x - y)^2 + (beta*x - z)^2 <= phi * (N - x)^2 },
    phi = phi(N, eps) = 2*eps / (N * (N-1)^2),

which is contained in the sublevel body {0 < |f| <= eps}.  This module
gives exact membership verdicts, the base-circle tangency data against the
hyperbola y*z = eps, a seeded sampler that stress-tests the inclusion, and
the enclosing parallelepiped (with bound sqrt(2*eps/N), the cross-section
radius at x = 1, which is what actually contains the cone).
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import (
    DyadicInterval,
    SurdSum,
    as_surdsum,
    certified_sign,
)
from .lattice import ParameterError, as_quadratic_surd, f_exact

__all__ = [
    "ConeParams",
    "ConeMembershipVerdict",
    "TangencyData",
    "InclusionSample",
    "InclusionReport",
    "phi",
    "cone_contains",
    "base_tangency",
    "cone_inclusion_sample",
    "parallelepiped_contains",
]

_CHUNK = 2048  # samples per RNG chunk; fixed so results ignore thread count


def _sqrt_phi(params: "ConeParams", scale: Fraction) -> SurdSum:
    """scale * sqrt(phi), with the perfect square (N-1)^2 pulled out of the
    radicand first so even desk-scale N keeps the radicand factorable:
    sqrt(phi) = sqrt(2*eps/N) / (N-1)."""
    return SurdSum.sqrt(
        Fraction(2 * params.epsilon, params.N), coeff=Fraction(scale, params.N - 1)
    )


def phi(N: int, epsilon: Fraction) -> Fraction:
    """Aperture constant 2*eps / (N*(N-1)^2), exactly."""
    epsilon = Fraction(epsilon)
    if N < 2:
        raise ParameterError("N must be >= 2")
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    return 2 * epsilon / (N * (N - 1) ** 2)


@dataclass(frozen=True)
class ConeParams:
    N: int
    epsilon: Fraction
    phi: Fraction

    @classmethod
    def make(cls, N: int, epsilon) -> "ConeParams":
        epsilon = Fraction(epsilon)
        return cls(N, epsilon, phi(N, epsilon))


@dataclass(frozen=True)
class ConeMembershipVerdict:
    inside: bool
    margin: DyadicInterval  # lhs - rhs of the defining inequality
    margin_sign: int
    x_in_range: bool


def cone_contains(alpha, beta, p: Sequence, params: ConeParams, bits: int = 128) -> ConeMembershipVerdict:
    """Certified membership of an exact point (lattice or real with exact
    coordinates); the boundary counts as inside (closed cone)."""
    alpha_s = as_surdsum(as_quadratic_surd(alpha))
    beta_s = as_surdsum(as_quadratic_surd(beta))
    x, y, z = (as_surdsum(c) for c in tuple(p))
    in_lo = certified_sign(x - 1) >= 0
    in_hi = certified_sign(params.N - x) >= 0
    x_in_range = in_lo and in_hi
    ra = alpha_s * x - y
    rb = beta_s * x - z
    slack = params.N - x
    margin = ra * ra + rb * rb - params.phi * (slack * slack)
    sign = certified_sign(margin)
    return ConeMembershipVerdict(
        inside=x_in_range and sign <= 0,
        margin=margin.interval(bits),
        margin_sign=sign,
        x_in_range=x_in_range,
    )


@dataclass(frozen=True)
class TangencyData:
    """Base-circle data at x = 1: radius sqrt(2*eps), tangency point
    (1, sqrt(eps), sqrt(eps)) on the hyperbola y*z = eps, and the exact
    vanishing of the tangency discriminant r^4 - 4*eps^2."""

    radius: SurdSum
    point: tuple[Fraction, SurdSum, SurdSum]
    discriminant_is_zero: bool
    on_hyperbola: bool


def base_tangency(epsilon) -> TangencyData:
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    radius = SurdSum.sqrt(2 * epsilon)
    se = SurdSum.sqrt(epsilon)
    r4 = (radius * radius) ** 2  # exact rational (2*eps)^2
    disc_zero = certified_sign(r4 - 4 * epsilon * epsilon) == 0
    on_hyp = certified_sign(se * se - epsilon) == 0
    return TangencyData(radius, (Fraction(1), se, se), disc_zero, on_hyp)


@dataclass(frozen=True)
class InclusionSample:
    """One sampled interior point, in scaled cross-section coordinates:
    the point is (x, alpha*x - u*s, beta*x - v*s) with s = sqrt(phi)*(N-x),
    so f at the point is the exact rational x*u*v*phi*(N-x)^2."""

    x: Fraction
    u: Fraction
    v: Fraction
    f: Fraction
    margin: Fraction  # (u^2+v^2-1)*phi*(N-x)^2 <= 0


@dataclass(frozen=True)
class InclusionReport:
    params: ConeParams
    samples: int
    violations: tuple[InclusionSample, ...]
    rows: tuple[InclusionSample, ...]
    crosschecked: int

    @property
    def ok(self) -> bool:
        return not self.violations


def _unit_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.getrandbits(53), 1 << 53)


def _sample_chunk(args) -> tuple[list[InclusionSample], list[InclusionSample]]:
    N, epsilon, phi_val, seed, chunk_index, count = args
    rng = random.Random(seed * 1_000_003 + chunk_index)
    rows: list[InclusionSample] = []
    violations: list[InclusionSample] = []
    for _ in range(count):
        x = 1 + (N - 1) * _unit_fraction(rng)
        while True:
            u = 2 * _unit_fraction(rng) - 1
            v = 2 * _unit_fraction(rng) - 1
            if u != 0 and v != 0 and u * u + v * v < 1:
                break
        slack2 = (N - x) * (N - x)
        f = x * u * v * phi_val * slack2
        margin = (u * u + v * v - 1) * phi_val * slack2
        sample = InclusionSample(x, u, v, f, margin)
        rows.append(sample)
        if not (0 < abs(f) <= epsilon) or margin > 0:
            violations.append(sample)
    return rows, violations


def cone_inclusion_sample(
    alpha,
    beta,
    params: ConeParams,
    sample_count: int,
    seed: int = 0,
    threads: int = 1,
    crosscheck: int = 32,
) -> InclusionReport:
    """Draw points uniformly from the open cone (uniform in x, uniform in
    the open cross-section disk minus the axes, where f would vanish) and
    certify 0 < |f| <= eps for each.

    In scaled coordinates every check is an exact rational comparison; a
    subsample is additionally pushed through the full surd evaluation of f
    to confirm the two routes agree exactly.
    """
    if sample_count < 1:
        raise ParameterError("sample_count must be >= 1")
    N, epsilon = params.N, params.epsilon
    chunks = [
        (N, epsilon, params.phi, seed, i, min(_CHUNK, sample_count - i * _CHUNK))
        for i in range((sample_count + _CHUNK - 1) // _CHUNK)
    ]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sample_chunk, chunks))
    else:
        results = [_sample_chunk(c) for c in chunks]
    rows: list[InclusionSample] = []
    violations: list[InclusionSample] = []
    for r, v in results:
        rows.extend(r)
        violations.extend(v)

    alpha_q = as_quadratic_surd(alpha)
    beta_q = as_quadratic_surd(beta)
    checked = 0
    step = max(1, len(rows) // max(1, crosscheck))
    for sample in rows[::step]:
        s = _sqrt_phi(params, N - sample.x)
        y = as_surdsum(alpha_q) * sample.x - sample.u * s
        z = as_surdsum(beta_q) * sample.x - sample.v * s
        through_surds = f_exact(alpha_q, beta_q, sample.x, y, z)
        if certified_sign(through_surds - sample.f) != 0:
            raise AssertionError(
                "scaled-coordinate f disagrees with the surd evaluation"
            )
        checked += 1
    return InclusionReport(params, len(rows), tuple(violations), tuple(rows), checked)


def sample_point_coordinates(
    alpha, beta, params: ConeParams, sample: InclusionSample, bits: int = 128
) -> tuple[Fraction, DyadicInterval, DyadicInterval]:
    """Cartesian coordinates of a sampled point for reporting."""
    s = _sqrt_phi(params, params.N - sample.x)
    y = as_surdsum(as_quadratic_surd(alpha)) * sample.x - sample.u * s
    z = as_surdsum(as_quadratic_surd(beta)) * sample.x - sample.v * s
    return sample.x, y.interval(bits), z.interval(bits)


def parallelepiped_contains(alpha, beta, p: Sequence, params: ConeParams) -> bool:
    """Membership in the box 1 <= x <= N, |alpha*x - y| <= sqrt(2*eps/N),
    |beta*x - z| <= sqrt(2*eps/N), decided exactly on squares."""
    alpha_s = as_surdsum(as_quadratic_surd(alpha))
    beta_s = as_surdsum(as_quadratic_surd(beta))
    x, y, z = (as_surdsum(c) for c in tuple(p))
    if certified_sign(x - 1) < 0 or certified_sign(params.N - x) < 0:
        return False
    bound = Fraction(2 * params.epsilon, params.N)
    ra = alpha_s * x - y
    rb = beta_s * x - z
    return (
        certified_sign(ra * ra - bound) <= 0
        and certified_sign(rb * rb - bound) <= 0
    )
