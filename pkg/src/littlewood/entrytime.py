"""Approximation lines through a Dirichlet point and their first entry
into the cone.

The line through P0 = (x0, y0, z0) with the order-2n convergent direction
is gamma_n(t) = (x0 - t, y0 - t*c_2n(alpha), z0 - t*c_2n(beta)), t in
[0, x0-1].  Membership of gamma_n(t) in the cone is the quadratic
inequality

    A t^2 + 2 B t + C >= 0,
    A = phi - e_a^2 - e_b^2,
    B = phi (N - x0) + e_a U0 + e_b V0,
    C = phi (N - x0)^2 - U0^2 - V0^2,

with e_a = e_2n(alpha), e_b = e_2n(beta) the (positive) even-order error
terms.  Under the transversality condition

    sqrt(N) (N - 1)  <=  sqrt(2 eps) / (2 max(e_a, e_b))

A is positive and the discriminant D_n = 4 (B^2 - A C) is positive, so the
first entry time is the root tau_n = (-2B + sqrt(D_n)) / (2A).  Everything
is decided exactly; tau itself is reported as a certified interval.

The cubic variant drops the cone and asks for first entry of the line into
the full body {|f| <= eps}, which means locating roots of the cubic
(x0 - t)(U0 - e_a t)(V0 - e_b t) = +-eps by certified bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import rootfind
from .cfrac import CFSpec, ErrorTerm, convergents, cf_expand, error_term
from .cone import ConeParams
from .exactnum import (
    DyadicInterval,
    QuadraticSurd,
    SurdSum,
    as_surdsum,
    certified_sign,
)
from .lattice import DirichletPoint, ParameterError, as_quadratic_surd

__all__ = [
    "NontransversalConfigurationError",
    "NonpositiveDenominatorError",
    "ApproxLine",
    "EntryTimeReport",
    "AngleReport",
    "CubicEntryReport",
    "approx_line",
    "line_gamma",
    "transversality_check",
    "discriminant",
    "discriminant_rearranged",
    "entry_time",
    "entry_time_bisected",
    "angle",
    "cubic_entry_time",
]


class NontransversalConfigurationError(RuntimeError):
    """Entry time requested for a line that may miss the cone."""


class NonpositiveDenominatorError(RuntimeError):
    """The quadratic's leading coefficient is not positive."""


@dataclass(frozen=True)
class ApproxLine:
    """Line through a Dirichlet point with an order-2n convergent direction."""

    n: int
    P0: DirichletPoint
    alpha: QuadraticSurd
    beta: QuadraticSurd
    c_alpha: Fraction
    c_beta: Fraction
    q2n_alpha: int
    q2n_beta: int
    p2n_alpha: int
    p2n_beta: int
    e_alpha: ErrorTerm
    e_beta: ErrorTerm

    @property
    def x0(self) -> int:
        return self.P0.point.x


def approx_line(alpha_spec: CFSpec, beta_spec: CFSpec, n: int, P0: DirichletPoint) -> ApproxLine:
    """Bundle the order-2n data; even order keeps both error terms >= 0."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    ca = convergents(cf_expand(alpha_spec, 2 * n + 1))[2 * n]
    cb = convergents(cf_expand(beta_spec, 2 * n + 1))[2 * n]
    ea = error_term(alpha_spec, 2 * n)
    eb = error_term(beta_spec, 2 * n)
    if ea.sign < 0 or eb.sign < 0:
        raise ParameterError("even-order error terms must be nonnegative")
    return ApproxLine(
        n,
        P0,
        as_quadratic_surd(alpha_spec),
        as_quadratic_surd(beta_spec),
        ca.as_fraction(),
        cb.as_fraction(),
        ca.q,
        cb.q,
        ca.p,
        cb.p,
        ea,
        eb,
    )


def line_gamma(line: ApproxLine, t: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """gamma_n(t), exact.  Callers may evaluate outside [0, x0-1] for
    diagnostics; the segment semantics live in the membership checks."""
    t = Fraction(t)
    x0, y0, z0 = tuple(line.P0.point)
    return (x0 - t, y0 - t * line.c_alpha, z0 - t * line.c_beta)


def _error_value(e) -> SurdSum:
    if isinstance(e, ErrorTerm):
        return e.value
    return as_surdsum(e)


def transversality_check(N: int, epsilon, e_alpha, e_beta) -> bool:
    """Exact verdict of sqrt(N)(N-1) <= sqrt(2 eps)/(2 max(e_a, e_b)),
    decided by squaring (every quantity is nonnegative)."""
    if N < 2:
        raise ParameterError("N must be >= 2")
    epsilon = Fraction(epsilon)
    ea = _error_value(e_alpha)
    eb = _error_value(e_beta)
    emax = ea if certified_sign(ea - eb) >= 0 else eb
    if certified_sign(emax) == 0:
        return True  # rational directions: the right-hand side is infinite
    lhs = 4 * (emax * emax) * (N * (N - 1) ** 2)
    return certified_sign(lhs - 2 * epsilon) <= 0


def _membership_coeffs(line: ApproxLine, params: ConeParams) -> tuple[SurdSum, SurdSum, SurdSum]:
    ea = line.e_alpha.value
    eb = line.e_beta.value
    U0, V0 = line.P0.U0, line.P0.V0
    slack = params.N - line.x0
    A = as_surdsum(params.phi) - ea * ea - eb * eb
    B = as_surdsum(params.phi * slack) + ea * U0 + eb * V0
    C = as_surdsum(params.phi * slack * slack) - U0 * U0 - V0 * V0
    return A, B, C


def discriminant(line: ApproxLine, params: ConeParams) -> SurdSum:
    """D_n = 4 (B^2 - A C), exactly."""
    A, B, C = _membership_coeffs(line, params)
    return 4 * (B * B - A * C)


def discriminant_rearranged(line: ApproxLine, params: ConeParams) -> SurdSum:
    """The same discriminant with the square expanded and regrouped; equal
    to :func:`discriminant` as an algebraic identity, kept as a regression
    cross-check on the exact arithmetic."""
    ea = line.e_alpha.value
    eb = line.e_beta.value
    U0, V0 = line.P0.U0, line.P0.V0
    phi_s = as_surdsum(params.phi)
    slack = params.N - line.x0
    quarter = (
        2 * params.phi * slack * (ea * U0 + eb * V0)
        + 2 * (ea * eb) * (U0 * V0)
        + (ea * ea) * params.phi * slack * slack
        + (eb * eb) * params.phi * slack * slack
        + (phi_s - ea * ea) * (V0 * V0)
        + (phi_s - eb * eb) * (U0 * U0)
    )
    return 4 * quarter


@dataclass(frozen=True)
class EntryTimeReport:
    """First entry of the line into the cone.

    tau is a certified interval (degenerate [0,0] when P0 is already
    inside); d_n and denominator keep their exact handles so chain
    comparisons downstream stay exact.
    """

    n: int
    N: int
    transversal: bool
    already_inside: bool
    d_n: SurdSum
    d_n_sign: int
    denominator: SurdSum
    t_minus: DyadicInterval | None
    t_plus: DyadicInterval | None
    tau: DyadicInterval
    positive: bool
    within_x0: bool
    within_segment: bool
    _A: SurdSum
    _B: SurdSum
    _C: SurdSum

    def tau_vs(self, k, strict: bool = False) -> bool:
        """Exact comparison tau <= k (or < k): sqrt(B^2 - AC) vs A*k + B."""
        k = Fraction(k)
        if self.already_inside:
            return 0 < k if strict else 0 <= k
        rhs = self._A * k + self._B
        if certified_sign(rhs) < 0:
            return False
        lhs = self._B * self._B - self._A * self._C
        cmp = certified_sign(lhs - rhs * rhs)
        return cmp < 0 if strict else cmp <= 0


def entry_time(line: ApproxLine, params: ConeParams, rel_tol: Fraction = Fraction(1, 10**12)) -> EntryTimeReport:
    """Entry time tau_n as a certified interval of relative width <= rel_tol.

    Requires the transversality condition; with it the denominator is
    provably positive.  If P0 already satisfies the membership inequality
    the first entry is immediate and tau = 0 by convention.
    """
    transversal = transversality_check(
        params.N, params.epsilon, line.e_alpha, line.e_beta
    )
    if not transversal:
        raise NontransversalConfigurationError(
            f"n={line.n}, N={params.N}: the line may miss the cone"
        )
    A, B, C = _membership_coeffs(line, params)
    if certified_sign(A) <= 0:
        raise NonpositiveDenominatorError("phi - e_a^2 - e_b^2 must be positive")
    D = 4 * (B * B - A * C)
    d_sign = certified_sign(D)
    c_sign = certified_sign(C)

    already_inside = c_sign >= 0
    t_minus = t_plus = None
    if d_sign > 0:
        t_minus, t_plus = _root_intervals(A, B, D, rel_tol)
    if already_inside:
        tau = DyadicInterval(Fraction(0), Fraction(0), 64)
        positive = False
    else:
        # C < 0 forces D = 4(B^2 - AC) > 0, so t_plus exists
        tau = t_plus
        positive = True
    x0 = line.x0
    report = EntryTimeReport(
        line.n,
        params.N,
        transversal,
        already_inside,
        D,
        d_sign,
        A,
        t_minus,
        t_plus,
        tau,
        positive,
        False,
        False,
        A,
        B,
        C,
    )
    within_x0 = report.tau_vs(x0, strict=True)
    within_segment = report.tau_vs(x0 - 1)
    object.__setattr__(report, "within_x0", within_x0)
    object.__setattr__(report, "within_segment", within_segment)
    return report


def _root_intervals(
    A: SurdSum, B: SurdSum, D: SurdSum, rel_tol: Fraction
) -> tuple[DyadicInterval, DyadicInterval]:
    """Certified intervals for both roots (-2B -+ sqrt(D)) / (2A)."""
    bits = 128
    while True:
        a_iv = A.interval(bits)
        d_iv = D.interval(bits)
        if a_iv.lo <= 0 or d_iv.lo < 0:
            bits *= 2
            continue
        sq = d_iv.sqrt(bits)
        minus2b = (-2 * B).interval(bits)
        den = a_iv.scale(2)
        tm = (minus2b - sq).divide(den, bits)
        tp = (minus2b + sq).divide(den, bits)
        scale = max(abs(tp.lo), abs(tp.hi), Fraction(1, 10**6))
        if tp.width <= rel_tol * scale and tm.width <= rel_tol * max(
            abs(tm.lo), abs(tm.hi), Fraction(1, 10**6)
        ):
            return tm, tp
        if bits > 1 << 16:
            raise ParameterError("entry time interval failed to converge")
        bits *= 2


def entry_time_bisected(
    line: ApproxLine,
    params: ConeParams,
    tol: Fraction = Fraction(1, 10**10),
    t_max: Fraction | None = None,
) -> tuple[Fraction, Fraction]:
    """Independent entry-time oracle: bisection on the exact membership
    predicate of gamma_n(t) along [0, t_max] (default x0 - 1).

    The membership set on that range is a terminal segment, so the single
    boundary crossing brackets the entry time.
    """
    A, B, C = _membership_coeffs(line, params)
    member = lambda t: rootfind.poly_sign_at([C, 2 * B, A], t) >= 0
    if member(Fraction(0)):
        return Fraction(0), Fraction(0)
    hi = Fraction(t_max if t_max is not None else line.x0 - 1)
    if not member(hi):
        raise ParameterError(f"no entry within [0, {hi}]")
    lo = Fraction(0)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if member(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


@dataclass(frozen=True)
class AngleReport:
    """Angle between the approximation line and the irrational axis."""

    theta_lo: float
    theta_hi: float
    cos_interval: DyadicInterval
    cos_at_most_one: bool

    @property
    def theta(self) -> float:
        return (self.theta_lo + self.theta_hi) / 2


def angle(line: ApproxLine, bits: int = 192) -> AngleReport:
    """theta_n = arccos((1 + a*c_a + b*c_b) / (|(1,a,b)| |(1,c_a,c_b)|))."""
    a = as_surdsum(line.alpha)
    b = as_surdsum(line.beta)
    ca, cb = line.c_alpha, line.c_beta
    num = 1 + a * line.c_alpha + b * line.c_beta
    den_sq_axis = 1 + a * a + b * b
    den_sq_dir = as_surdsum(1 + ca * ca + cb * cb)
    cauchy_schwarz = certified_sign(num * num - den_sq_axis * den_sq_dir) <= 0
    den_iv = den_sq_axis.interval(bits).sqrt(bits) * den_sq_dir.interval(bits).sqrt(bits)
    cos_iv = num.interval(bits).divide(den_iv, bits)
    c_lo = min(1.0, max(-1.0, float(cos_iv.lo)))
    c_hi = min(1.0, max(-1.0, float(cos_iv.hi)))
    theta_lo = math.acos(c_hi)
    theta_hi = math.acos(c_lo)
    for _ in range(4):  # pad float endpoints outward
        theta_lo = math.nextafter(theta_lo, -math.inf)
        theta_hi = math.nextafter(theta_hi, math.inf)
    return AngleReport(max(0.0, theta_lo), theta_hi, cos_iv, cauchy_schwarz)


@dataclass(frozen=True)
class CubicEntryReport:
    """First entry of the line into the full body {|f| <= eps}."""

    epsilon: Fraction
    tau_cubic: tuple[Fraction, Fraction] | None
    entered_at_zero: bool
    boundary_roots: tuple[tuple[Fraction, Fraction, int], ...]  # (lo, hi, level sign)
    no_entry: bool
    at_most_tau_cone: bool | None


def cubic_entry_time(
    line: ApproxLine,
    epsilon,
    cone_report: EntryTimeReport | None = None,
    tol: Fraction = Fraction(1, 10**12),
) -> CubicEntryReport:
    """Smallest t in [0, x0-1] with |f(gamma_n(t))| <= eps.

    Along the line, f(gamma_n(t)) = (x0 - t)(U0 - e_a t)(V0 - e_b t); the
    boundary crossings are roots of that cubic at levels +-eps, isolated by
    certified sign-change bisection.  Absence of an entry inside the
    segment is a reported outcome, not an error.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    ea = line.e_alpha.value
    eb = line.e_beta.value
    U0, V0 = line.P0.U0, line.P0.V0
    x0 = line.x0
    # (x0 - t) * (U0 - ea t) * (V0 - eb t), ascending coefficients
    g = _poly_mul(_poly_mul([as_surdsum(x0), as_surdsum(-1)], [U0, -ea]), [V0, -eb])

    g0 = rootfind.poly_eval(g, Fraction(0))
    if certified_sign(g0 * g0 - epsilon * epsilon) <= 0:
        verdict = _leq_verdict((Fraction(0), Fraction(0)), cone_report)
        return CubicEntryReport(epsilon, (Fraction(0), Fraction(0)), True, (), False, verdict)

    hi = Fraction(x0 - 1)
    upper = list(g)
    upper[0] = upper[0] - epsilon
    lower = list(g)
    lower[0] = lower[0] + epsilon
    roots: list[tuple[Fraction, Fraction, int]] = []
    for coeffs, level in ((upper, 1), (lower, -1)):
        for lo_r, hi_r in rootfind.isolate_roots(coeffs, Fraction(0), hi, tol):
            roots.append((lo_r, hi_r, level))
    roots.sort(key=lambda r: r[0])
    if not roots:
        return CubicEntryReport(epsilon, None, False, (), True, None)
    first = (roots[0][0], roots[0][1])
    verdict = _leq_verdict(first, cone_report)
    return CubicEntryReport(epsilon, first, False, tuple(roots), False, verdict)


def _poly_mul(p: list[SurdSum], q: list[SurdSum]) -> list[SurdSum]:
    out = [as_surdsum(0)] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        for j, cj in enumerate(q):
            out[i + j] = out[i + j] + as_surdsum(ci) * as_surdsum(cj)
    return out


def _leq_verdict(
    tau_cubic: tuple[Fraction, Fraction], cone_report: EntryTimeReport | None
) -> bool | None:
    """tau_cubic <= tau_cone within 1e-9, on the certified intervals."""
    if cone_report is None:
        return None
    return tau_cubic[1] <= cone_report.tau.hi + Fraction(1, 10**9)
