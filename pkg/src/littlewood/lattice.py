"""The cubic form f(x,y,z) = x(alpha*x - y)(beta*x - z) on lattice points,
the shear that straightens it, simultaneous Dirichlet search, brute-force
minimisation oracles, and the sublevel-measure check for the one-variable
cubic.

Scans use a floating prescreen with a generous slack margin to nominate
candidates, and every nominated candidate is confirmed or rejected in
exact arithmetic, so reported results carry no floating-point risk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cfrac import CFSpec
from .exactnum import (
    DyadicInterval,
    QuadraticSurd,
    SurdSum,
    as_surdsum,
    certified_sign,
    surd_nearest_int,
)
from . import rootfind

__all__ = [
    "ParameterError",
    "TheoremViolationError",
    "RootIsolationError",
    "LatticePoint",
    "DirichletPoint",
    "FEval",
    "MinRecord",
    "CartanReport",
    "as_quadratic_surd",
    "f_eval",
    "m_transform",
    "dirichlet_search",
    "brute_min_scan",
    "cartan_measure",
]

# slack added to float prescreens before exact confirmation; float error in
# x*alpha for x <= 1e7 is below 1e-8, so this can never lose a candidate
_SCREEN_SLACK = 1e-6


class ParameterError(ValueError):
    """Caller-supplied parameter outside the documented domain."""


class TheoremViolationError(RuntimeError):
    """A pigeonhole-guaranteed search came back empty (indicates a bug)."""


class RootIsolationError(RuntimeError):
    """Roots could not be separated at the precision cap."""


@dataclass(frozen=True)
class LatticePoint:
    x: int
    y: int
    z: int

    def __iter__(self):
        return iter((self.x, self.y, self.z))


@dataclass(frozen=True)
class DirichletPoint:
    """Simultaneous-approximation point: 1 <= x <= N with both residuals
    U0 = alpha*x - y and V0 = beta*x - z at most 1/sqrt(N) in magnitude."""

    point: LatticePoint
    N: int
    U0: SurdSum
    V0: SurdSum

    @property
    def x(self) -> int:
        return self.point.x


@dataclass(frozen=True)
class FEval:
    """Certified evaluation of f at a point: exact sign, magnitude
    enclosure, the exact value handle, and the trichotomy against eps."""

    sign: int
    magnitude: DyadicInterval
    exact: SurdSum
    vs_epsilon: str  # 'below' | 'equal' | 'above'


def as_quadratic_surd(x) -> QuadraticSurd:
    """Coerce CFSpec / Fraction / int input into a QuadraticSurd."""
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, CFSpec):
        v = x.value()
        return v if isinstance(v, QuadraticSurd) else QuadraticSurd.from_rational(v)
    if isinstance(x, (int, Fraction)):
        return QuadraticSurd.from_rational(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a real number")


def f_exact(alpha, beta, x, y, z) -> SurdSum:
    """f = x*(alpha*x - y)*(beta*x - z) with exact (possibly irrational)
    coordinates."""
    alpha_s = as_surdsum(as_quadratic_surd(alpha))
    beta_s = as_surdsum(as_quadratic_surd(beta))
    x, y, z = as_surdsum(x), as_surdsum(y), as_surdsum(z)
    return x * (alpha_s * x - y) * (beta_s * x - z)


def f_eval(
    alpha, beta, p: LatticePoint | Sequence, epsilon: Fraction, bits: int = 128
) -> FEval:
    """Certified sign of f(p) and exact trichotomy of |f(p)| against eps,
    decided on squares (sign of f^2 - eps^2) to avoid square roots."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    x, y, z = tuple(p)
    fx = f_exact(alpha, beta, x, y, z)
    sign = certified_sign(fx)
    cmp_eps = certified_sign(fx * fx - epsilon * epsilon)
    vs = "below" if cmp_eps < 0 else ("equal" if cmp_eps == 0 else "above")
    return FEval(sign, fx.interval(bits).abs(), fx, vs)


def m_transform(alpha, beta, p: LatticePoint | Sequence) -> tuple[SurdSum, SurdSum, SurdSum]:
    """(x, alpha*x - y, beta*x - z): the unimodular shear under which
    f(x,y,z) = x' * y' * z' of the image."""
    alpha_s = as_surdsum(as_quadratic_surd(alpha))
    beta_s = as_surdsum(as_quadratic_surd(beta))
    x, y, z = (as_surdsum(c) for c in tuple(p))
    return x, alpha_s * x - y, beta_s * x - z


def _residual(alpha: QuadraticSurd, x: int) -> tuple[int, QuadraticSurd]:
    """Nearest integer y to alpha*x and the exact residual alpha*x - y."""
    v = alpha * x
    y = surd_nearest_int(v)
    return y, v - y


def dirichlet_search(alpha, beta, N: int) -> DirichletPoint:
    """Smallest x in [1, N] whose nearest-integer residuals for alpha and
    beta are both at most 1/sqrt(N), residual comparisons exact (squared:
    residual^2 <= 1/N).  Existence for N >= 2 is a Minkowski/pigeonhole
    guarantee, so an empty result raises TheoremViolationError.
    """
    if N < 2:
        raise ParameterError("N must be >= 2")
    alpha = as_quadratic_surd(alpha)
    beta = as_quadratic_surd(beta)
    bound = Fraction(1, N)  # compare residual^2 against 1/N

    af = float(alpha.to_interval(64).midpoint())
    bf = float(beta.to_interval(64).midpoint())
    xs = np.arange(1, N + 1, dtype=np.float64)
    thresh = 1.0 / math.sqrt(N) + _SCREEN_SLACK
    fa = np.mod(xs * af, 1.0)
    fb = np.mod(xs * bf, 1.0)
    near = (np.minimum(fa, 1.0 - fa) <= thresh) & (np.minimum(fb, 1.0 - fb) <= thresh)
    candidates = np.nonzero(near)[0] + 1

    for x in map(int, candidates):
        ya, ua = _residual(alpha, x)
        if certified_sign(as_surdsum(ua * ua) - bound) > 0:
            continue
        yb, ub = _residual(beta, x)
        if certified_sign(as_surdsum(ub * ub) - bound) > 0:
            continue
        return DirichletPoint(
            LatticePoint(x, ya, yb), N, as_surdsum(ua), as_surdsum(ub)
        )
    # The screen cannot lose a candidate; a full exact sweep is kept as a
    # belt-and-braces fallback before declaring the impossible.
    for x in range(1, N + 1):
        ya, ua = _residual(alpha, x)
        if certified_sign(as_surdsum(ua * ua) - bound) > 0:
            continue
        yb, ub = _residual(beta, x)
        if certified_sign(as_surdsum(ub * ub) - bound) > 0:
            continue
        return DirichletPoint(LatticePoint(x, ya, yb), N, as_surdsum(ua), as_surdsum(ub))
    raise TheoremViolationError(f"no Dirichlet point for N={N}; this is a bug")


@dataclass(frozen=True)
class MinRecord:
    """A new running minimum of x * ||x*alpha|| * ||x*beta||."""

    x: int
    lo: Fraction
    hi: Fraction
    value: SurdSum


def brute_min_scan(alpha, beta, X: int, bits: int = 128) -> list[MinRecord]:
    """Every x in [1, X] where x*||x*alpha||*||x*beta|| reaches a new
    minimum, with certified value enclosures.

    A vectorised float prescan nominates candidates within a 5% band of the
    float running minimum (float error here is under 1%, so no true record
    can be missed); each candidate is then settled exactly.
    """
    if X < 1:
        raise ParameterError("X must be >= 1")
    alpha = as_quadratic_surd(alpha)
    beta = as_quadratic_surd(beta)

    af = float(alpha.to_interval(64).midpoint())
    bf = float(beta.to_interval(64).midpoint())
    xs = np.arange(1, X + 1, dtype=np.float64)
    fa = np.mod(xs * af, 1.0)
    fb = np.mod(xs * bf, 1.0)
    vals = xs * np.minimum(fa, 1.0 - fa) * np.minimum(fb, 1.0 - fb)
    runmin_prev = np.concatenate(([np.inf], np.minimum.accumulate(vals)[:-1]))
    candidates = np.nonzero(vals <= runmin_prev * 1.05)[0] + 1

    records: list[MinRecord] = []
    best: SurdSum | None = None
    best_hi: Fraction | None = None
    for x in map(int, candidates):
        _, ua = _residual(alpha, x)
        _, ub = _residual(beta, x)
        val = x * as_surdsum(ua).abs() * as_surdsum(ub).abs()
        if best is not None:
            iv = val.interval(96)
            if iv.lo > best_hi:
                continue
            if certified_sign(val - best) >= 0:
                continue
        iv = val.interval(bits)
        records.append(MinRecord(x, iv.lo, iv.hi, val))
        best = val
        best_hi = val.interval(96).hi
    return records


@dataclass(frozen=True)
class CartanReport:
    """Sublevel measures of the one-variable cubic through (y0, z0).

    P(x) = x (x - y0/alpha)(x - z0/beta) is the monic cubic with
    alpha*beta*P(x) = f(x, y0, z0).  The report carries certified bounds on
    the Lebesgue measure of both {|P| <= eps} (monic form; the classical
    sublevel estimate 2e*eps^(1/3) is a theorem for it) and {|f| <= eps},
    plus the comparison of each against 2e*eps^(1/3).
    """

    epsilon: Fraction
    monic_measure_lo: Fraction
    monic_measure_hi: Fraction
    f_measure_lo: Fraction
    f_measure_hi: Fraction
    bound: float  # 2e * eps^(1/3)
    monic_within_bound: bool
    f_within_bound: bool

    @property
    def monic_measure(self) -> Fraction:
        return (self.monic_measure_lo + self.monic_measure_hi) / 2

    @property
    def f_measure(self) -> Fraction:
        return (self.f_measure_lo + self.f_measure_hi) / 2


def _sublevel_measure(
    coeffs: list[SurdSum], level: SurdSum, tol: Fraction
) -> tuple[Fraction, Fraction]:
    """Certified bounds on the measure of {t : |g(t)| <= level} for a cubic
    g with positive leading coefficient and a positive level."""
    upper = [c for c in coeffs]
    upper[0] = upper[0] - level
    lower = [c for c in coeffs]
    lower[0] = lower[0] + level
    R = max(rootfind.root_magnitude_bound(upper), rootfind.root_magnitude_bound(lower))

    attempt_tol = tol
    for _ in range(4):
        roots = sorted(
            rootfind.isolate_roots(upper, -R, R, attempt_tol)
            + rootfind.isolate_roots(lower, -R, R, attempt_tol),
            key=lambda r: r[0],
        )
        if all(a[1] < b[0] for a, b in zip(roots, roots[1:])):
            break
        attempt_tol /= 100  # overlapping enclosures: separate and retry
    else:
        raise RootIsolationError("boundary roots would not separate")

    lo_sum = Fraction(0)
    hi_sum = Fraction(0)
    for left, right in zip(roots, roots[1:]):
        mid = (left[1] + right[0]) / 2
        inside = (
            rootfind.poly_sign_at(upper, mid) <= 0
            and rootfind.poly_sign_at(lower, mid) >= 0
        )
        if inside:
            lo_sum += max(Fraction(0), right[0] - left[1])
            hi_sum += right[1] - left[0]
    return lo_sum, hi_sum


def cartan_measure(
    alpha,
    beta,
    y0: int,
    z0: int,
    epsilon: Fraction,
    tol: Fraction = Fraction(1, 10**11),
) -> CartanReport:
    """Measure the sublevel sets of the cubic through (y0, z0) by certified
    root isolation and monotone-piece inversion (default accuracy well
    under the 1e-9 contract), and compare against 2e*eps^(1/3)."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    alpha_s = as_surdsum(as_quadratic_surd(alpha))
    beta_s = as_surdsum(as_quadratic_surd(beta))
    ab = alpha_s * beta_s
    if certified_sign(ab) <= 0:
        raise ParameterError("alpha*beta must be positive")
    # g(t) = f(t, y0, z0) = (alpha*beta) t^3 - (alpha z0 + beta y0) t^2 + y0 z0 t
    coeffs = [
        as_surdsum(0),
        as_surdsum(y0 * z0),
        -(alpha_s * z0 + beta_s * y0),
        ab,
    ]
    # {|P| <= eps} = {|g| <= eps*alpha*beta};  {|f| <= eps} = {|g| <= eps}
    monic_lo, monic_hi = _sublevel_measure(coeffs, ab * epsilon, tol)
    f_lo, f_hi = _sublevel_measure(coeffs, as_surdsum(epsilon), tol)
    bound = 2 * math.e * float(epsilon) ** (1 / 3)
    return CartanReport(
        epsilon,
        monic_lo,
        monic_hi,
        f_lo,
        f_hi,
        bound,
        float(monic_hi) <= bound,
        float(f_hi) <= bound,
    )
