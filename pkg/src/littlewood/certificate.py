"""The sufficient-condition checker and its search drivers.

A single (n, N) cell is checked by the pipeline: transversality of the
order-2n line, Dirichlet point for N, certified entry time tau_n, lcm time
t_n = lcm(q_2n(alpha), q_2n(beta)), and the chain

    tau_n <= 2^(n-1)  <  lambda^(2n)  <=  x0 - 2,

with lambda = (M+1)^2 from the pair's partial-quotient bound.  If the
chain holds, the lattice point gamma_n(t_n) is constructed and
0 < |f| <= eps is certified directly; the looser requirement
tau_n <= t_n < x0 is evaluated and reported alongside.  A search sweeps
(n, N) cells and either returns the first verified certificate or a
structured exhaustion report in which every cell records the first
condition that failed.

For pairs whose partial quotients are at most 3 (lambda = 16) the search
window prescribed by the degree-18 entry-time majorant is scanned, and the
contradiction system
    a u^4 + b u^2 + c  <=  2^(7/4) X^(1/8) + 2^(57/8) X^(39/16) + 2^(27/4) X^(9/8),
    2^(-5/8) X^(-3/16) <= u <= (x0 - 1)^(1/4),     X = 2 eps,
is refuted pointwise on a u-grid with certified interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cfrac import (
    CFSpec,
    ProfileViolationError,
    bad_constant_estimate,
    cf_expand,
    joint_bad_profile,
    lcm_time,
)
from .cone import ConeParams, cone_contains
from .entrytime import (
    ApproxLine,
    EntryTimeReport,
    approx_line,
    entry_time,
    transversality_check,
)
from .exactnum import (
    DyadicInterval,
    SurdSum,
    as_surdsum,
    certified_sign,
    frac_pow_interval,
    surd_nearest_int,
)
from .lattice import (
    DirichletPoint,
    LatticePoint,
    ParameterError,
    as_quadratic_surd,
    dirichlet_search,
    f_eval,
)

__all__ = [
    "TheoremCheck",
    "SearchOutcome",
    "PsiEval",
    "B3PairReport",
    "B3ScanReport",
    "FAIL_REASONS",
    "theorem_check",
    "certificate_search",
    "verify_certificate",
    "psi_eval",
    "infeasibility_grid_check",
    "b3_infeasibility_scan",
    "transversality_ceiling",
]

FAIL_REASONS = (
    "dirichlet-gap",
    "transversality-fail",
    "tau-too-large",
    "lcm-too-large",
    "x0-too-small",
    "verify-fail",
)


@dataclass(frozen=True)
class TheoremCheck:
    """Outcome of one (n, N) cell of the sufficient condition."""

    n: int
    N: int
    epsilon: Fraction
    lam: int
    transversal: bool
    x0: int | None = None
    tau: DyadicInterval | None = None
    t_n: int | None = None
    chain_ok: bool = False
    direct_ok: bool | None = None  # tau <= t_n < x0
    tn_below_x0: bool | None = None  # the looser t_n < x0 alone
    reason: str | None = None
    candidate: LatticePoint | None = None
    verified: bool | None = None


def verify_certificate(alpha, beta, epsilon, p: LatticePoint | Sequence) -> bool:
    """Certified 0 < |f(p)| <= eps, independent of how p was found."""
    fe = f_eval(alpha, beta, p, Fraction(epsilon))
    return fe.sign != 0 and fe.vs_epsilon in ("below", "equal")


def transversality_ceiling(epsilon, e_alpha, e_beta, max_N: int) -> int:
    """Largest N <= max_N passing the transversality condition (1 when even
    N = 2 fails; the condition is monotone decreasing in N)."""
    epsilon = Fraction(epsilon)
    if not transversality_check(2, epsilon, e_alpha, e_beta):
        return 1
    if transversality_check(max_N, epsilon, e_alpha, e_beta):
        return max_N
    lo, hi = 2, max_N  # check(lo) true, check(hi) false
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if transversality_check(mid, epsilon, e_alpha, e_beta):
            lo = mid
        else:
            hi = mid
    return lo


def _gamma_lattice_point(line: ApproxLine, t_n: int) -> LatticePoint:
    """gamma_n(t_n) with exact integer coordinates (t_n is a multiple of
    both convergent denominators)."""
    x0, y0, z0 = tuple(line.P0.point)
    if t_n % line.q2n_alpha or t_n % line.q2n_beta:
        raise ParameterError("t_n must be a common multiple of q_2n's")
    return LatticePoint(
        x0 - t_n,
        y0 - (t_n // line.q2n_alpha) * line.p2n_alpha,
        z0 - (t_n // line.q2n_beta) * line.p2n_beta,
    )


def theorem_check(alpha: CFSpec, beta: CFSpec, epsilon, n: int, N: int) -> TheoremCheck:
    """Run the full pipeline for one (n, N) and record what binds.

    Precondition N > 1/(2 eps) (the Dirichlet condition); violating it is a
    parameter error.  The recorded reason is the first failing link, so an
    exhaustion report shows which constraint binds where.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    if n < 1:
        raise ParameterError("n must be >= 1")
    if N < 2 or 2 * epsilon * N <= 1:
        raise ParameterError(
            f"dirichlet-gap: need N >= 2 and N > 1/(2 eps); got N={N}"
        )
    profile = joint_bad_profile(alpha, beta, Q=1)
    lam = profile.lam

    line_probe = approx_line(alpha, beta, n, _dummy_point(N))
    transversal = transversality_check(N, epsilon, line_probe.e_alpha, line_probe.e_beta)
    if not transversal:
        return TheoremCheck(
            n, N, epsilon, lam, False, reason="transversality-fail"
        )

    P0 = dirichlet_search(alpha, beta, N)
    line = approx_line(alpha, beta, n, P0)
    params = ConeParams.make(N, epsilon)
    rep = entry_time(line, params)
    t_n = lcm_time(alpha, beta, n)
    x0 = P0.x

    tau_le_pow = rep.tau_vs(1 << (n - 1))
    pow_lt_lam = (1 << (n - 1)) < lam ** (2 * n)
    lam_le_x0 = lam ** (2 * n) <= x0 - 2
    direct_ok = rep.tau_vs(t_n) and t_n < x0
    tn_below_x0 = t_n < x0

    base = dict(
        n=n,
        N=N,
        epsilon=epsilon,
        lam=lam,
        transversal=True,
        x0=x0,
        tau=rep.tau,
        t_n=t_n,
        direct_ok=direct_ok,
        tn_below_x0=tn_below_x0,
    )
    if not tau_le_pow:
        return TheoremCheck(**base, chain_ok=False, reason="tau-too-large")
    if not pow_lt_lam:
        return TheoremCheck(**base, chain_ok=False, reason="lcm-too-large")
    if not lam_le_x0:
        return TheoremCheck(**base, chain_ok=False, reason="x0-too-small")

    candidate = _gamma_lattice_point(line, t_n)
    membership = cone_contains(alpha.value(), beta.value(), candidate, params)
    good = membership.inside and verify_certificate(
        alpha.value(), beta.value(), epsilon, candidate
    )
    return TheoremCheck(
        **base,
        chain_ok=True,
        reason=None if good else "verify-fail",
        candidate=candidate,
        verified=good,
    )


def _dummy_point(N: int) -> DirichletPoint:
    """Placeholder Dirichlet point for the transversality short-circuit,
    which never looks at it."""
    zero = SurdSum()
    return DirichletPoint(LatticePoint(1, 0, 0), N, zero, zero)


@dataclass(frozen=True)
class SearchOutcome:
    epsilon: Fraction
    n_max: int
    strategy: str
    cells: tuple[TheoremCheck, ...]
    found: TheoremCheck | None
    trivial_witness: LatticePoint | None

    @property
    def exhausted(self) -> bool:
        return self.found is None


def _geometric_grid(N0: int, ceiling: int) -> list[int]:
    out = []
    N = N0
    while N <= ceiling:
        out.append(N)
        N *= 2
    if out and out[-1] != ceiling:
        out.append(ceiling)
    return out or [N0]


def certificate_search(
    alpha: CFSpec,
    beta: CFSpec,
    epsilon,
    n_max: int,
    strategy: str = "geometric",
    max_N: int = 10**6,
    max_cells: int = 20000,
    n_min: int = 1,
) -> SearchOutcome:
    """Sweep n = n_min..n_max with, per n, N running from the Dirichlet
    floor up to the transversality ceiling (geometric doubling by default,
    every integer with strategy='full').  Deterministic; exhaustion is an
    outcome, not an error."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ParameterError("epsilon must be positive")
    if n_max < n_min:
        raise ParameterError("n_max must be >= n_min")
    if strategy not in ("geometric", "full"):
        raise ParameterError("strategy must be 'geometric' or 'full'")

    N0 = max(2, int(1 / (2 * epsilon)) + 1)
    if N0 > max_N:
        raise ParameterError(
            f"Dirichlet floor {N0} exceeds max_N={max_N}; raise max_N"
        )

    alpha_q, beta_q = as_quadratic_surd(alpha), as_quadratic_surd(beta)
    trivial = None
    norm_prod = _dist_to_nearest(alpha_q) * _dist_to_nearest(beta_q)
    if certified_sign(norm_prod - epsilon) <= 0:
        trivial = LatticePoint(
            1, surd_nearest_int(alpha_q), surd_nearest_int(beta_q)
        )

    cells: list[TheoremCheck] = []
    found = None
    for n in range(n_min, n_max + 1):
        probe = approx_line(alpha, beta, n, _dummy_point(N0))
        ceiling = transversality_ceiling(epsilon, probe.e_alpha, probe.e_beta, max_N)
        if ceiling < N0:
            grid = [N0]  # records the transversality failure at the floor
        elif strategy == "geometric":
            grid = _geometric_grid(N0, ceiling)
        else:
            if ceiling - N0 + 1 > max_cells:
                raise ParameterError(
                    f"full grid for n={n} has {ceiling - N0 + 1} cells; "
                    f"use geometric or raise max_cells"
                )
            grid = list(range(N0, ceiling + 1))
        for N in grid:
            try:
                cell = theorem_check(alpha, beta, epsilon, n, N)
            except ParameterError:
                cell = TheoremCheck(
                    n, N, epsilon, 0, False, reason="dirichlet-gap"
                )
            cells.append(cell)
            if cell.verified:
                found = cell
                break
        if found:
            break
    return SearchOutcome(epsilon, n_max, strategy, tuple(cells), found, trivial)


def _dist_to_nearest(v) -> SurdSum:
    v = as_quadratic_surd(v)
    d = as_surdsum(v) - surd_nearest_int(v)
    return -d if certified_sign(d) < 0 else d


# -- the degree-18 entry-time majorant and the contradiction system --------


@dataclass(frozen=True)
class PsiEval:
    """One evaluation of the entry-time majorant

        psi(u) = a u^18 + b u^16 + c u^14 - d u^8 - e,
        a = 2^17.5 (X^4/4 + 2),  b = 2^17.5 X^(5/2),  c = 4 sqrt(2) X,
        d = 2^14 C / x0,         e = 2^15 (N - x0),

    together with h(u) = psi(u) - u/2 (feasibility needs h(u) <= 0)."""

    u: object
    X: Fraction
    a: SurdSum
    b: SurdSum
    c: SurdSum
    d: Fraction
    e: Fraction
    value: DyadicInterval
    h_value: DyadicInterval


def _psi_coefficients(X: Fraction) -> tuple[SurdSum, SurdSum, SurdSum]:
    a = SurdSum.sqrt(2, coeff=(1 << 17) * (X**4 / 4 + 2))
    b = SurdSum.sqrt(2 * X, coeff=(1 << 17) * X**2)  # 2^17.5 X^2.5
    c = SurdSum.sqrt(2, coeff=4 * X)
    return a, b, c


def psi_eval(u, X, x0: int, N: int, C, bits: int = 192) -> PsiEval:
    """Certified interval value of psi and h at u (a rational or an
    interval; fractional-power endpoints arrive as intervals)."""
    X = Fraction(X)
    C = Fraction(C)
    if X <= 0:
        raise ParameterError("X = 2*eps must be positive")
    if x0 < 1 or N < x0:
        raise ParameterError("need 1 <= x0 <= N")
    a, b, c = _psi_coefficients(X)
    d = Fraction((1 << 14) * C, x0)
    e = Fraction((1 << 15) * (N - x0))
    if isinstance(u, DyadicInterval):
        u_iv = u
        half_u = u_iv.scale(Fraction(1, 2))
    else:
        u = Fraction(u)
        u_iv = DyadicInterval.point(u, bits)
        half_u = DyadicInterval.point(u / 2, bits)
    powers = {k: _iv_pow(u_iv, k) for k in (8, 14, 16, 18)}
    val = (
        a.interval(bits) * powers[18]
        + b.interval(bits) * powers[16]
        + c.interval(bits) * powers[14]
        - DyadicInterval.point(d, bits) * powers[8]
        - DyadicInterval.point(e, bits)
    )
    h = val - half_u
    return PsiEval(u, X, a, b, c, d, e, val, h)


def _iv_pow(iv: DyadicInterval, k: int) -> DyadicInterval:
    out = DyadicInterval.point(1, iv.precision_bits)
    base = iv
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


@dataclass(frozen=True)
class GridCheckResult:
    ok: bool
    points: int
    empty_range: bool
    min_margin: float  # min over the grid of lhs_lo - rhs_hi
    u_lo: DyadicInterval
    u_hi: DyadicInterval | None


def infeasibility_grid_check(
    X: Fraction, x0: int | None, points: int = 1000, bits: int = 160
) -> GridCheckResult:
    """Refute  a u^4 + b u^2 + c <= 2^(7/4) X^(1/8) + 2^(57/8) X^(39/16)
    + 2^(27/4) X^(9/8)  on a grid spanning the admissible u-range.

    The left side increases in u > 0, so a positive margin across the grid
    (and at the certified endpoints) pins the contradiction; an empty
    admissible range refutes the system outright.
    """
    X = Fraction(X)
    a, b, c = _psi_coefficients(X)
    rhs = (
        frac_pow_interval(2, 7, 4, bits) * frac_pow_interval(X, 1, 8, bits)
        + frac_pow_interval(2, 57, 8, bits) * frac_pow_interval(X, 39, 16, bits)
        + frac_pow_interval(2, 27, 4, bits) * frac_pow_interval(X, 9, 8, bits)
    )
    # u_lo = 2^(-5/8) X^(-3/16)
    u_lo = frac_pow_interval(2, -5, 8, bits) * frac_pow_interval(X, -3, 16, bits)
    u_hi = None
    if x0 is not None:
        if x0 < 2:
            return GridCheckResult(True, 0, True, math.inf, u_lo, None)
        u_hi = frac_pow_interval(x0 - 1, 1, 4, bits)
        if u_hi.hi < u_lo.lo:
            return GridCheckResult(True, 0, True, math.inf, u_lo, u_hi)

    def lhs_at(u_iv: DyadicInterval) -> DyadicInterval:
        u2 = u_iv * u_iv
        u4 = u2 * u2
        return a.interval(bits) * u4 + b.interval(bits) * u2 + c.interval(bits)

    grid: list[DyadicInterval] = [u_lo]
    if u_hi is not None and points > 1:
        lo_r, hi_r = u_lo.hi, u_hi.lo
        if hi_r > lo_r:
            step = (hi_r - lo_r) / (points - 1)
            grid.extend(
                DyadicInterval.point(lo_r + j * step, bits) for j in range(points)
            )
        grid.append(u_hi)

    ok = True
    min_margin = math.inf
    for u_iv in grid:
        margin = lhs_at(u_iv).lo - rhs.hi
        min_margin = min(min_margin, float(margin))
        if margin <= 0:
            ok = False
    return GridCheckResult(ok, len(grid), False, min_margin, u_lo, u_hi)


@dataclass(frozen=True)
class B3PairReport:
    alpha: CFSpec
    beta: CFSpec
    epsilon: Fraction
    n_lo: int
    n_hi: int
    cells: tuple[TheoremCheck, ...]
    certificates: tuple[TheoremCheck, ...]
    reason_counts: dict
    x0_reference: int | None
    grid: GridCheckResult


@dataclass(frozen=True)
class B3ScanReport:
    reports: tuple[B3PairReport, ...]

    @property
    def total_certificates(self) -> int:
        return sum(len(r.certificates) for r in self.reports)


def _admissible_n_lo(X: Fraction) -> int:
    # smallest n >= 1 with 2^n >= 2^(-5/8) X^(-3/16): X^3 * 2^(16n+10) >= 1
    n = 1
    while X**3 * Fraction(2) ** (16 * n + 10) < 1:
        n += 1
    return n


def b3_infeasibility_scan(
    pairs: Iterable[tuple[CFSpec, CFSpec]],
    epsilons: Iterable,
    u_points: int = 1000,
    max_N: int = 10**6,
) -> B3ScanReport:
    """For bounded-quotient pairs (all partial quotients <= 3, lambda = 16),
    sweep the admissible (n, N) window for every eps and independently
    refute the contradiction system on a u-grid."""
    reports: list[B3PairReport] = []
    pairs = list(pairs)
    for alpha, beta in pairs:
        profile = joint_bad_profile(alpha, beta, Q=1)
        if profile.M > 3:
            raise ProfileViolationError(
                f"pair has a partial quotient {profile.M} > 3"
            )
    for alpha, beta in pairs:
        for eps in epsilons:
            eps = Fraction(eps)
            X = 2 * eps
            n_lo = _admissible_n_lo(X)
            n_hi = max(n_lo, int(math.log2(max_N)) // 4)
            outcome = certificate_search(
                alpha, beta, eps, n_max=n_hi, n_min=n_lo, max_N=max_N
            )
            x0_ref = max(
                (c.x0 for c in outcome.cells if c.x0 is not None), default=None
            )
            if x0_ref is None:
                x0_ref = dirichlet_search(
                    alpha, beta, max(2, int(1 / (2 * eps)) + 1)
                ).x
            grid = infeasibility_grid_check(X, x0_ref, points=u_points)
            counts: dict[str, int] = {}
            for cell in outcome.cells:
                if cell.reason:
                    counts[cell.reason] = counts.get(cell.reason, 0) + 1
            certs = tuple(c for c in outcome.cells if c.verified)
            reports.append(
                B3PairReport(
                    alpha, beta, eps, n_lo, n_hi, outcome.cells, certs,
                    counts, x0_ref, grid,
                )
            )
    return B3ScanReport(tuple(reports))
