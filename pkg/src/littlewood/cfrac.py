"""Continued fractions: expansion of quadratic irrationals, convergents,
exact error terms, and growth / approximation-quality metrics.

Everything here is exact.  Quadratic irrationals are expanded by the
integer-only floor/invert/normalize recurrence, which detects its own
period, so partial quotients of any order cost O(period).  Convergents
p_n/q_n follow the standard two-term recurrence

    p_n = a_n * p_{n-1} + p_{n-2},     q_n = a_n * q_{n-1} + q_{n-2}

with p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1, and the error terms
e_n = alpha - p_n/q_n are kept as exact surd handles with certified signs
(positive at even n, negative at odd n) satisfying

    1/(2 q_n q_{n+1}) <= |e_n| <= 1/(q_n q_{n+1}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactnum import (
    QuadraticSurd,
    SurdSum,
    as_surdsum,
    certified_sign,
    surd_nearest_int,
    surd_normalize,
)

__all__ = [
    "CFError",
    "ProfileViolationError",
    "InternalInconsistencyError",
    "CFSpec",
    "Convergent",
    "ErrorTerm",
    "BadProfile",
    "GrowthReport",
    "LcmGrowthProfile",
    "LEVY_AE_LOG",
    "cf_expand",
    "convergents",
    "convergent",
    "error_term",
    "growth_bounds_check",
    "levy_quotient",
    "bad_constant_estimate",
    "bad_constant_scan",
    "lcm_time",
    "lcm_growth_profile",
    "bad_profile",
    "joint_bad_profile",
]

QUADRATIC_SURD = "quadratic-surd"
EXPLICIT_PERIODIC = "explicit-periodic"
FINITE_RATIONAL = "finite-rational"

# Almost-every-alpha limit of log(q_n)/n (Levy); comparison line only.
LEVY_AE_LOG = math.pi**2 / (12 * math.log(2))


class CFError(Exception):
    """Continued-fraction layer errors."""


class ProfileViolationError(CFError):
    """A partial quotient exceeded the declared bound M."""


class InternalInconsistencyError(CFError):
    """A proven-impossible bound failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class CFSpec:
    """Description of a real number by its continued fraction.

    kind is one of:
      * "quadratic-surd": payload `surd`, an irrational QuadraticSurd;
      * "explicit-periodic": payload `preperiod` (starts with a_0 >= 0) and
        nonempty `period`, all later quotients >= 1;
      * "finite-rational": payload `rational`.
    """

    kind: str
    surd: QuadraticSurd | None = None
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    rational: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind == QUADRATIC_SURD:
            if self.surd is None or self.surd.is_rational:
                raise CFError("quadratic-surd spec needs an irrational surd")
        elif self.kind == EXPLICIT_PERIODIC:
            if not self.preperiod:
                raise CFError("explicit-periodic spec needs a_0")
            if not self.period:
                raise CFError("explicit-periodic spec needs a nonempty period")
            if self.preperiod[0] < 0:
                raise CFError("a_0 must be >= 0")
            if any(a < 1 for a in self.preperiod[1:]) or any(
                a < 1 for a in self.period
            ):
                raise CFError("partial quotients a_j must be >= 1 for j >= 1")
        elif self.kind == FINITE_RATIONAL:
            if self.rational is None:
                raise CFError("finite-rational spec needs a rational payload")
        else:
            raise CFError(f"unknown CF kind {self.kind!r}")

    @classmethod
    def from_surd(cls, surd: QuadraticSurd) -> "CFSpec":
        surd = surd_normalize(surd)
        if surd.is_rational:
            return cls(FINITE_RATIONAL, rational=surd.as_fraction())
        return cls(QUADRATIC_SURD, surd=surd)

    @classmethod
    def from_periodic(cls, preperiod: Iterable[int], period: Iterable[int]) -> "CFSpec":
        return cls(
            EXPLICIT_PERIODIC, preperiod=tuple(preperiod), period=tuple(period)
        )

    @classmethod
    def from_rational(cls, x) -> "CFSpec":
        return cls(FINITE_RATIONAL, rational=Fraction(x))

    # -- exact value ---------------------------------------------------------

    def value(self) -> QuadraticSurd | Fraction:
        """The exact real number this spec describes."""
        if self.kind == FINITE_RATIONAL:
            return self.rational
        if self.kind == QUADRATIC_SURD:
            return self.surd
        return _periodic_value(self.preperiod, self.period)

    def value_surdsum(self) -> SurdSum:
        return as_surdsum(self.value())

    def is_irrational(self) -> bool:
        return self.kind != FINITE_RATIONAL


@lru_cache(maxsize=512)
def _periodic_value(preperiod: tuple[int, ...], period: tuple[int, ...]) -> QuadraticSurd:
    """Exact value of an eventually periodic continued fraction.

    The purely periodic tail y = [period; period; ...] is the positive
    fixed point of the Mobius map given by the period's convergent matrix,
    hence the positive root of  C y^2 + (D - A) y - B = 0; the preperiod is
    then folded back by a_k + 1/x.
    """
    A, B, C, D = 1, 0, 0, 1  # identity; columns track (p_n p_{n-1}; q_n q_{n-1})
    for a in period:
        A, B, C, D = a * A + B, A, a * C + D, C
    # y = (A y + B) / (C y + D)  =>  C y^2 + (D - A) y - B = 0
    if C == 0:
        raise CFError("degenerate period")
    disc = (D - A) * (D - A) + 4 * C * B
    y = QuadraticSurd.make(A - D, 1, 2 * C, disc)
    if certified_sign(as_surdsum(y)) <= 0:
        y = QuadraticSurd.make(A - D, -1, 2 * C, disc)
    x = y
    for a in reversed(preperiod):
        x = x.reciprocal() + a
    # fold order: innermost first; preperiod[-1] applied first
    return surd_normalize(x)


@lru_cache(maxsize=512)
def _surd_cf_cycle(surd: QuadraticSurd) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Preperiod and period of a quadratic irrational's expansion, by the
    floor / invert / normalize recurrence with state cycle detection."""
    x = surd_normalize(surd)
    seen: dict[tuple[int, int, int, int], int] = {}
    quots: list[int] = []
    while True:
        key = (x.a, x.b, x.c, x.d)
        if key in seen:
            i = seen[key]
            return tuple(quots[:i]), tuple(quots[i:])
        seen[key] = len(quots)
        a = x.floor()
        quots.append(a)
        x = (x - a).reciprocal()


def _quotients(spec: CFSpec, count: int) -> list[int]:
    if count < 1:
        raise ValueError("count must be >= 1")
    if spec.kind == FINITE_RATIONAL:
        p, q = spec.rational.numerator, spec.rational.denominator
        out = []
        while q and len(out) < count:
            a, rem = divmod(p, q)
            out.append(a)
            p, q = q, rem
        return out
    if spec.kind == EXPLICIT_PERIODIC:
        pre, per = spec.preperiod, spec.period
    else:
        pre, per = _surd_cf_cycle(spec.surd)
    out = list(pre[:count])
    i = 0
    while len(out) < count:
        out.append(per[i % len(per)])
        i += 1
    return out


def cf_expand(spec: CFSpec, count: int) -> list[int]:
    """First `count` partial quotients a_0 .. a_{count-1}, exactly.

    A finite rational may exhaust earlier; the full (shorter) canonical
    expansion is returned in that case, which is the truncation notice.
    """
    return _quotients(spec, count)


@dataclass(frozen=True)
class Convergent:
    """One convergent p_n / q_n (always in lowest terms)."""

    n: int
    p: int
    q: int

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


def convergents(quotients: Sequence[int]) -> list[Convergent]:
    """All convergents of a quotient list via the two-term recurrence."""
    if not quotients:
        raise ValueError("need at least a_0")
    if any(a < 1 for a in quotients[1:]):
        raise ValueError("partial quotients a_j must be >= 1 for j >= 1")
    out: list[Convergent] = []
    p_prev, q_prev = 1, 0
    p, q = quotients[0], 1
    out.append(Convergent(0, p, q))
    for n, a in enumerate(quotients[1:], start=1):
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Convergent(n, p, q))
    return out


def convergent(spec: CFSpec, n: int) -> Convergent:
    """The single convergent of order n of a CF spec."""
    quots = cf_expand(spec, n + 1)
    if len(quots) <= n:
        raise CFError(
            f"expansion has only {len(quots)} quotients; convergent {n} "
            f"does not exist"
        )
    return convergents(quots)[n]


@dataclass(frozen=True)
class ErrorTerm:
    """Exact error e_n = alpha - p_n/q_n with certified sign.

    Sign alternates: positive at even n, negative at odd n (zero only when
    a finite rational expansion terminates exactly at n).
    """

    n: int
    value: SurdSum
    sign: int
    q_n: int
    q_next: int | None

    def interval(self, bits: int):
        return self.value.interval(bits)

    def magnitude(self) -> SurdSum:
        return self.value if self.sign >= 0 else -self.value

    def bounds_ok(self) -> bool:
        """Exact check of 1/(2 q_n q_{n+1}) <= |e_n| <= 1/(q_n q_{n+1})."""
        if self.q_next is None:
            raise CFError("sandwich bounds need q_{n+1}")
        m = self.magnitude()
        lo = Fraction(1, 2 * self.q_n * self.q_next)
        hi = Fraction(1, self.q_n * self.q_next)
        return certified_sign(m - lo) >= 0 and certified_sign(m - hi) <= 0


def error_term(spec: CFSpec, n: int) -> ErrorTerm:
    """e_n = alpha - c_n as an exact handle; requires convergent n."""
    quots = cf_expand(spec, n + 2)
    if len(quots) <= n:
        raise CFError(f"expansion has only {len(quots)} quotients; need n={n}")
    convs = convergents(quots)
    c = convs[n]
    value = spec.value_surdsum() - Fraction(c.p, c.q)
    sign = certified_sign(value)
    if spec.is_irrational() and sign != (1 if n % 2 == 0 else -1):
        raise InternalInconsistencyError(
            f"error term sign {sign} breaks the (-1)^n alternation at n={n}"
        )
    q_next = convs[n + 1].q if len(convs) > n + 1 else None
    return ErrorTerm(n, value, sign, c.q, q_next)


@dataclass(frozen=True)
class GrowthReport:
    """Outcome of the denominator growth check 2^((n-2)/2) <= q_n <= lambda^(n/2)."""

    ok: bool
    n_max: int
    lam: int
    first_violation: tuple[int, str] | None = None


def growth_bounds_check(spec: CFSpec, M: int, n_max: int) -> GrowthReport:
    """Verify 2^((n-2)/2) <= q_n <= ((M+1)^2)^(n/2) for all n <= n_max.

    Raises ProfileViolationError if some partial quotient exceeds M; the
    bound comparisons are done on squares so everything stays integral.
    """
    quots = cf_expand(spec, n_max + 1)
    for j, a in enumerate(quots):
        if j >= 1 and a > M:
            raise ProfileViolationError(f"a_{j} = {a} exceeds declared M = {M}")
    lam = (M + 1) ** 2
    for conv in convergents(quots):
        n, q = conv.n, conv.q
        if n >= 2 and q * q < (1 << (n - 2)):
            return GrowthReport(False, n_max, lam, (n, "lower"))
        if q * q > lam**n:
            return GrowthReport(False, n_max, lam, (n, "upper"))
    return GrowthReport(True, n_max, lam, None)


def levy_quotient(spec: CFSpec, n: int) -> float:
    """log(q_n)/n.  math.log on big ints carries ~1e-16 relative error,
    comfortably inside the 1e-12 contract."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = convergent(spec, n).q
    return math.log(q) / n


def bad_constant_scan(spec: CFSpec, Q: int) -> tuple[SurdSum, int]:
    """Exact min of q*||q*alpha|| over 1 <= q <= Q and its argmin."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    value = spec.value()
    if isinstance(value, Fraction):
        value = QuadraticSurd.from_rational(value)
    best: SurdSum | None = None
    best_hi: Fraction | None = None
    best_q = 1
    for q in range(1, Q + 1):
        v = value * q
        m = surd_nearest_int(v)
        dist = as_surdsum(v) - m
        if certified_sign(dist) < 0:
            dist = -dist
        val = q * dist
        if best is not None:
            # cheap interval prune before the exact comparison
            iv = val.interval(96)
            if iv.lo > best_hi:
                continue
            if certified_sign(val - best) >= 0:
                continue
        best = val
        best_hi = val.interval(96).hi
        best_q = q
    return best, best_q


def bad_constant_estimate(spec: CFSpec, Q: int) -> Fraction:
    """Rational lower bound for min_{1<=q<=Q} q*||q*alpha|| (a scan bound,
    not the true infimum over all q)."""
    best, _ = bad_constant_scan(spec, Q)
    return best.interval(128).lo


@dataclass(frozen=True)
class BadProfile:
    """Partial-quotient bound M, lambda = (M+1)^2, and a positive rational
    lower-bound estimate for max(inf q||q*alpha||, inf q||q*beta||)."""

    M: int
    lam: int
    C_estimate: Fraction

    def __post_init__(self) -> None:
        if self.lam != (self.M + 1) ** 2:
            raise InternalInconsistencyError("lambda must equal (M+1)^2")


def _observed_M(spec: CFSpec, terms: int) -> int:
    """Sup of partial quotients a_j (j >= 1).  For periodic kinds the scan
    covers preperiod plus period, so this is the true sup."""
    if spec.kind == QUADRATIC_SURD:
        pre, per = _surd_cf_cycle(spec.surd)
        quots = list(pre) + list(per)
    elif spec.kind == EXPLICIT_PERIODIC:
        quots = list(spec.preperiod) + list(spec.period)
    else:
        p, q = spec.rational.numerator, spec.rational.denominator
        quots = []
        while q:
            a, rem = divmod(p, q)
            quots.append(a)
            p, q = q, rem
    tail = quots[1:] or [1]
    return max(tail)


def bad_profile(spec: CFSpec, Q: int = 1000) -> BadProfile:
    M = _observed_M(spec, 0)
    return BadProfile(M, (M + 1) ** 2, bad_constant_estimate(spec, Q))


def joint_bad_profile(alpha: CFSpec, beta: CFSpec, Q: int = 1000) -> BadProfile:
    """Joint profile of a pair: M is the max over both expansions and the
    constant estimate is the max of the two single scans."""
    M = max(_observed_M(alpha, 0), _observed_M(beta, 0))
    C = max(bad_constant_estimate(alpha, Q), bad_constant_estimate(beta, Q))
    return BadProfile(M, (M + 1) ** 2, C)


def lcm_time(alpha: CFSpec, beta: CFSpec, n: int) -> int:
    """t_n = lcm(q_{2n}(alpha), q_{2n}(beta)), with the proven sandwich
    2^(n-1) <= t_n <= lambda^(2n) asserted (lambda from the joint profile)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    qa = convergent(alpha, 2 * n).q
    qb = convergent(beta, 2 * n).q
    t = math.lcm(qa, qb)
    M = max(_observed_M(alpha, 2 * n), _observed_M(beta, 2 * n))
    lam = (M + 1) ** 2
    if n >= 1 and t < (1 << (n - 1)):
        raise InternalInconsistencyError(f"t_{n} = {t} < 2^(n-1)")
    if t > lam ** (2 * n):
        raise InternalInconsistencyError(f"t_{n} = {t} > lambda^(2n)")
    return t


@dataclass(frozen=True)
class LcmGrowthProfile:
    """Empirical growth of log(t_n)/n.  The sequence is bounded; whether it
    converges is not asserted, so both tail estimates are reported."""

    quotients: tuple[float, ...]
    liminf_estimate: float
    limsup_estimate: float


def lcm_growth_profile(alpha: CFSpec, beta: CFSpec, n_max: int) -> LcmGrowthProfile:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    qs = []
    for n in range(1, n_max + 1):
        qs.append(math.log(lcm_time(alpha, beta, n)) / n)
    tail = qs[len(qs) // 2 :]
    return LcmGrowthProfile(tuple(qs), min(tail), max(tail))
