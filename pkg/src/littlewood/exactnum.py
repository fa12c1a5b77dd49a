"""Exact number foundation: quadratic surds, sums of square roots, and
dyadic interval arithmetic with certified sign determination.

Three layers:

* ``QuadraticSurd`` -- a single number (a + b*sqrt(d))/c over arbitrary
  precision integers, the input representation for alpha and beta.
* ``SurdSum`` -- a finite rational combination  q0 + q1*sqrt(d1) + ... of
  square roots of distinct squarefree integers.  Sums, differences and
  products of surds stay in this class, and its sign is exactly decidable,
  so it is the workhorse for every certified comparison in the package.
* ``DyadicInterval`` -- outward-rounded enclosures with dyadic endpoints,
  used to decide almost every sign quickly before the exact path is tried.

``certified_sign`` ties the layers together: interval evaluation with a
doubling precision schedule (64 up to 4096 bits), then the exact recursive
sign algorithm for whatever still straddles zero (in practice: true zeros).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

__all__ = [
    "ExactArithmeticError",
    "MalformedSurdError",
    "UndecidedSignError",
    "SIGN_BITS_START",
    "SIGN_BITS_CAP",
    "squarefree_decompose",
    "iroot",
    "dyadic_round_down",
    "dyadic_round_up",
    "sqrt_interval",
    "root_interval",
    "frac_pow_interval",
    "DyadicInterval",
    "QuadraticSurd",
    "surd_normalize",
    "surd_compare",
    "surd_to_interval",
    "surd_nearest_int",
    "SurdSum",
    "as_surdsum",
    "certified_sign",
]

RationalLike = Union[int, Fraction]

SIGN_BITS_START = 64
SIGN_BITS_CAP = 4096

# Sound factorisation limit for squarefree_decompose: after trial division
# by everything <= _TRIAL_LIMIT, a cofactor <= _TRIAL_LIMIT**3 is 1, prime,
# a prime square, or a product of two distinct primes.
_TRIAL_LIMIT = 100_000


class ExactArithmeticError(Exception):
    """Base class for errors raised by the exact-arithmetic layer."""


class MalformedSurdError(ExactArithmeticError):
    """Quadratic surd with zero denominator or negative radicand."""


class UndecidedSignError(ExactArithmeticError):
    """Sign not certified at the precision cap and no exact path applies."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = s*s*r`` with ``r`` squarefree; return ``(s, r)``.

    Exact for any n whose post-trial-division cofactor is below
    ``_TRIAL_LIMIT**3`` (1e15 with the default limit); larger radicands
    raise rather than risk an uncertified decomposition.
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n <= 1:
        return 1, n
    square, free, rest = 1, 1, n
    p = 2
    while p * p <= rest and p <= _TRIAL_LIMIT:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            square *= p ** (e // 2)
            if e % 2:
                free *= p
        p += 1 if p == 2 else 2
    if rest > 1:
        s = math.isqrt(rest)
        if s * s == rest:
            square *= s
        elif rest <= _TRIAL_LIMIT**3:
            free *= rest
        else:
            # second pass: extend trial division to cbrt(rest), after which
            # the cofactor is certifiably 1, p, p^2 or p*q
            limit = iroot(rest, 3) + 1
            if limit > 10 * _TRIAL_LIMIT:
                raise ValueError(f"cannot certify squarefree part of {n}")
            while p * p <= rest and p <= limit:
                if rest % p == 0:
                    e = 0
                    while rest % p == 0:
                        rest //= p
                        e += 1
                    square *= p ** (e // 2)
                    if e % 2:
                        free *= p
                p += 2
            if rest > 1:
                s = math.isqrt(rest)
                if s * s == rest:
                    square *= s
                else:
                    free *= rest
    return square, free


def iroot(n: int, k: int) -> int:
    """Exact floor of the k-th root of a nonnegative integer."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0, k >= 1")
    if n == 0 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (-(-n.bit_length() // k))  # upper seed: 2^ceil(bits/k) >= n^(1/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def dyadic_round_down(x: RationalLike, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= x."""
    x = Fraction(x)
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def dyadic_round_up(x: RationalLike, bits: int) -> Fraction:
    """Smallest multiple of 2**-bits that is >= x."""
    x = Fraction(x)
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval with dyadic endpoints, guaranteed to contain the
    exact value it was computed from (outward rounding everywhere).

    Sums, differences and products of dyadics are computed exactly, so only
    leaf approximations (square roots, non-dyadic rationals) and division
    round at all.
    """

    lo: Fraction
    hi: Fraction
    precision_bits: int = 64

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: RationalLike, bits: int = 64) -> "DyadicInterval":
        x = Fraction(x)
        return cls(dyadic_round_down(x, bits), dyadic_round_up(x, bits), bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint())

    def contains(self, x: RationalLike) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign_or_none(self) -> int | None:
        """Certified sign if the interval excludes 0 (or is exactly 0)."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        return None

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi, -self.lo, self.precision_bits)

    def __add__(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(
            self.lo + other.lo,
            self.hi + other.hi,
            min(self.precision_bits, other.precision_bits),
        )

    def __sub__(self, other: "DyadicInterval") -> "DyadicInterval":
        return self + (-other)

    def __mul__(self, other: "DyadicInterval") -> "DyadicInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return DyadicInterval(
            min(products), max(products), min(self.precision_bits, other.precision_bits)
        )

    def scale(self, k: RationalLike) -> "DyadicInterval":
        """Multiply by an exact dyadic-or-rational constant (no rounding if
        k is dyadic)."""
        k = Fraction(k)
        a, b = self.lo * k, self.hi * k
        if a > b:
            a, b = b, a
        return DyadicInterval(a, b, self.precision_bits)

    def square(self) -> "DyadicInterval":
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.contains_zero():
            return DyadicInterval(Fraction(0), max(a, b), self.precision_bits)
        return DyadicInterval(min(a, b), max(a, b), self.precision_bits)

    def abs(self) -> "DyadicInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DyadicInterval(Fraction(0), max(-self.lo, self.hi), self.precision_bits)

    def divide(self, other: "DyadicInterval", bits: int | None = None) -> "DyadicInterval":
        """Quotient interval; the divisor must be sign-definite."""
        if other.contains_zero():
            raise ZeroDivisionError("division by an interval containing zero")
        bits = bits or max(self.precision_bits, other.precision_bits)
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return DyadicInterval(
            dyadic_round_down(min(quotients), bits),
            dyadic_round_up(max(quotients), bits),
            bits,
        )

    def sqrt(self, bits: int | None = None) -> "DyadicInterval":
        bits = bits or self.precision_bits
        if self.lo < 0:
            raise ValueError("sqrt of an interval with negative lower bound")
        return DyadicInterval(
            sqrt_interval(self.lo, bits).lo, sqrt_interval(self.hi, bits).hi, bits
        )

    def __repr__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def sqrt_interval(x: RationalLike, bits: int) -> DyadicInterval:
    """Enclosure of sqrt(x) with width <= 2**-bits, via integer square root."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of a negative rational")
    scaled = (x.numerator << (2 * bits)) // x.denominator
    m = math.isqrt(scaled)
    lo = Fraction(m, 1 << bits)
    if lo * lo == x:
        return DyadicInterval(lo, lo, bits)
    return DyadicInterval(lo, Fraction(m + 1, 1 << bits), bits)


def root_interval(x: RationalLike, k: int, bits: int) -> DyadicInterval:
    """Enclosure of x**(1/k) (x >= 0, k >= 1) with width <= 2**-bits."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("even roots of negative rationals are not real")
    scaled = (x.numerator << (k * bits)) // x.denominator
    m = iroot(scaled, k)
    lo = Fraction(m, 1 << bits)
    if lo**k == x:
        return DyadicInterval(lo, lo, bits)
    return DyadicInterval(lo, Fraction(m + 1, 1 << bits), bits)


def frac_pow_interval(base: RationalLike, num: int, den: int, bits: int) -> DyadicInterval:
    """Enclosure of base**(num/den) for a positive rational base."""
    base = Fraction(base)
    if base <= 0:
        raise ValueError("fractional powers need a positive base")
    if den < 1:
        raise ValueError("denominator of the exponent must be positive")
    return root_interval(base**num, den, bits)


@lru_cache(maxsize=4096)
def _cached_sqrt_interval(d: int, bits: int) -> DyadicInterval:
    return sqrt_interval(d, bits)


@dataclass(frozen=True)
class QuadraticSurd:
    """Exact real of the form (a + b*sqrt(d)) / c over integers.

    Canonical form (after :func:`surd_normalize`): d squarefree, c > 0,
    gcd(a, b, c) = 1, and the rational case collapses to b = d = 0.  The
    dataclass itself only validates; use :meth:`make` or `surd_normalize`
    to canonicalise, and note that ``==`` is structural.
    """

    a: int
    b: int
    c: int = 1
    d: int = 0

    def __post_init__(self) -> None:
        if self.c == 0:
            raise MalformedSurdError("denominator c must be nonzero")
        if self.d < 0:
            raise MalformedSurdError("radicand d must be nonnegative")

    @classmethod
    def make(cls, a: int, b: int = 0, c: int = 1, d: int = 0) -> "QuadraticSurd":
        return surd_normalize(cls(a, b, c, d))

    @classmethod
    def from_rational(cls, x: RationalLike) -> "QuadraticSurd":
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, 0)

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadraticSurd":
        return cls.make(0, 1, 1, n)

    # -- structure ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0 or self.d in (0, 1)

    def as_fraction(self) -> Fraction:
        s = surd_normalize(self)
        if not s.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return Fraction(s.a, s.c)

    def to_surdsum(self) -> "SurdSum":
        s = surd_normalize(self)
        terms = {1: Fraction(s.a, s.c)}
        if s.b:
            terms[s.d] = Fraction(s.b, s.c)
        return SurdSum(terms)

    # -- arithmetic (stays inside Q(sqrt(d))) ------------------------------

    def _coerce_same_field(self, other) -> "tuple[Fraction, Fraction] | None":
        """Other as (rational part, sqrt(d) coefficient) in this surd's field."""
        if isinstance(other, QuadraticSurd):
            o = surd_normalize(other)
            if o.is_rational:
                return Fraction(o.a, o.c), Fraction(0)
            s = surd_normalize(self)
            if s.is_rational or s.d == o.d:
                return Fraction(o.a, o.c), Fraction(o.b, o.c)
            return None
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def _from_parts(self, rat: Fraction, coef: Fraction, d: int) -> "QuadraticSurd":
        den = math.lcm(rat.denominator, coef.denominator)
        return QuadraticSurd.make(
            int(rat * den), int(coef * den), den, d if coef else 0
        )

    def __add__(self, other) -> "QuadraticSurd":
        parts = self._coerce_same_field(other)
        if parts is None:
            return NotImplemented
        s = surd_normalize(self)
        rat = Fraction(s.a, s.c) + parts[0]
        coef = (Fraction(s.b, s.c) if not s.is_rational else Fraction(0)) + parts[1]
        d = s.d if not s.is_rational else (
            surd_normalize(other).d if isinstance(other, QuadraticSurd) else 0
        )
        return self._from_parts(rat, coef, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd.make(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other) -> "QuadraticSurd":
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            neg = -other if isinstance(other, QuadraticSurd) else -Fraction(other)
            return self + neg
        return NotImplemented

    def __rsub__(self, other) -> "QuadraticSurd":
        return (-self) + other

    def __mul__(self, other) -> "QuadraticSurd":
        parts = self._coerce_same_field(other)
        if parts is None:
            return NotImplemented
        s = surd_normalize(self)
        a1, b1 = Fraction(s.a, s.c), Fraction(s.b, s.c)
        a2, b2 = parts
        d = s.d if not s.is_rational else (
            surd_normalize(other).d if isinstance(other, QuadraticSurd) else 0
        )
        rat = a1 * a2 + b1 * b2 * d
        coef = a1 * b2 + a2 * b1
        return self._from_parts(rat, coef, d)

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticSurd":
        s = surd_normalize(self)
        if s.is_rational:
            if s.a == 0:
                raise ZeroDivisionError("reciprocal of zero")
            return QuadraticSurd.make(s.c, 0, s.a, 0)
        norm = s.a * s.a - s.b * s.b * s.d  # nonzero: value is irrational
        return QuadraticSurd.make(s.c * s.a, -s.c * s.b, norm, s.d)

    # -- exact decisions ---------------------------------------------------

    def compare_rational(self, r: RationalLike) -> int:
        return surd_compare(self, Fraction(r))

    def floor(self) -> int:
        """Exact floor, by integer square roots plus one exact comparison."""
        s = surd_normalize(self)
        if s.is_rational:
            return s.a // s.c
        m = math.isqrt(s.b * s.b * s.d)
        # b*sqrt(d) lies strictly between t and t+1 (value is irrational)
        t = m if s.b > 0 else -m - 1
        k1 = (s.a + t) // s.c
        k2 = (s.a + t + 1) // s.c
        if k1 == k2:
            return k1
        return k2 if surd_compare(s, Fraction(k2)) >= 0 else k1

    def to_interval(self, bits: int) -> DyadicInterval:
        return surd_to_interval(self, bits)

    def __float__(self) -> float:
        return float(self.to_interval(64).midpoint())

    def __repr__(self) -> str:
        if self.is_rational:
            return f"({self.a}/{self.c})"
        return f"(({self.a} + {self.b}*sqrt({self.d}))/{self.c})"


def surd_nearest_int(s: QuadraticSurd) -> int:
    """Nearest integer to an exact surd (rational ties round up)."""
    return (s + Fraction(1, 2)).floor()


def surd_normalize(s: QuadraticSurd) -> QuadraticSurd:
    """Canonical form: d squarefree, c > 0, gcd(a, b, c) = 1; rationals
    collapse to b = d = 0.  Value preserving and idempotent."""
    a, b, c, d = s.a, s.b, s.c, s.d
    if c == 0:
        raise MalformedSurdError("denominator c must be nonzero")
    if d > 1 and b != 0:
        square, free = squarefree_decompose(d)
        b *= square
        d = free
    if d == 1:
        a += b
        b = 0
    if b == 0 or d == 0:
        b, d = 0, 0
    if c < 0:
        a, b, c = -a, -b, -c
    g = math.gcd(a, b, c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    return QuadraticSurd(a, b, c, d)


def surd_compare(s: QuadraticSurd, r: RationalLike) -> int:
    """Exact ordering of a quadratic surd against a rational: -1, 0, +1.

    Decided purely in integer arithmetic: move terms to one side, fix the
    sign pattern, square once.
    """
    s = surd_normalize(s)
    r = Fraction(r)
    # s - r = (A + B*sqrt(d)) / (c * r.den), with c*r.den > 0
    A = s.a * r.denominator - r.numerator * s.c
    B = s.b * r.denominator
    if B == 0:
        return (A > 0) - (A < 0)
    if B > 0:
        if A >= 0:
            return 1
        # sign of B*sqrt(d) - |A|
        lhs, rhs = B * B * s.d, A * A
        return (lhs > rhs) - (lhs < rhs)
    if A <= 0:
        return -1
    lhs, rhs = A * A, B * B * s.d
    return (lhs > rhs) - (lhs < rhs)


def surd_to_interval(s: QuadraticSurd, bits: int) -> DyadicInterval:
    """Enclosure of the surd with width <= 2**-bits (hence also within the
    relative contract width <= 2**-bits * max(1, |value|))."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    s = surd_normalize(s)
    if s.is_rational:
        v = Fraction(s.a, s.c)
        if (v.denominator & (v.denominator - 1)) == 0:  # dyadic: exact point
            return DyadicInterval(v, v, bits)
        return DyadicInterval.point(v, bits)
    work = bits + max(0, abs(s.b).bit_length() - s.c.bit_length() + 1) + 4
    while True:
        root = _cached_sqrt_interval(s.d, work)
        iv = root.scale(s.b) + DyadicInterval.point(s.a, work)
        out = DyadicInterval(
            dyadic_round_down(iv.lo / s.c, work),
            dyadic_round_up(iv.hi / s.c, work),
            bits,
        )
        if out.width <= Fraction(1, 1 << bits):
            return out
        work *= 2


class SurdSum:
    """Exact finite sum  q0 + q1*sqrt(d1) + q2*sqrt(d2) + ...  with rational
    coefficients and distinct squarefree radicands (key 1 = rational part).

    Closed under +, -, * and integer powers; equality is coefficient-wise;
    the sign is exactly decidable by the classical split-and-square
    recursion on the primes appearing in the radicands.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for rad, coef in terms.items():
                coef = Fraction(coef)
                if coef == 0 or rad == 0:
                    continue
                if rad < 0:
                    raise ValueError("radicands must be nonnegative")
                square, free = squarefree_decompose(rad)
                if square != 1:
                    coef *= square
                clean[free] = clean.get(free, Fraction(0)) + coef
        self._terms = {rad: c for rad, c in clean.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, x: RationalLike) -> "SurdSum":
        return cls({1: Fraction(x)})

    @classmethod
    def sqrt(cls, x: RationalLike, coeff: RationalLike = 1) -> "SurdSum":
        """coeff * sqrt(x) for a nonnegative rational x:
        sqrt(p/q) = sqrt(p*q)/q keeps the radicand integral."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("sqrt of a negative rational")
        if x == 0:
            return cls()
        rad = x.numerator * x.denominator
        return cls({rad: Fraction(coeff) / x.denominator})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(rad == 1 for rad in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is irrational")
        return self.rational_part()

    def __eq__(self, other) -> bool:
        if not isinstance(other, (SurdSum, int, Fraction, QuadraticSurd)):
            return NotImplemented
        return self._terms == as_surdsum(other)._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "SurdSum":
        other = as_surdsum(other)
        out = dict(self._terms)
        for rad, coef in other._terms.items():
            out[rad] = out.get(rad, Fraction(0)) + coef
        result = SurdSum.__new__(SurdSum)
        result._terms = {rad: c for rad, c in out.items() if c != 0}
        return result

    __radd__ = __add__

    def __neg__(self) -> "SurdSum":
        result = SurdSum.__new__(SurdSum)
        result._terms = {rad: -c for rad, c in self._terms.items()}
        return result

    def __sub__(self, other) -> "SurdSum":
        return self + (-as_surdsum(other))

    def __rsub__(self, other) -> "SurdSum":
        return as_surdsum(other) + (-self)

    def __mul__(self, other) -> "SurdSum":
        other = as_surdsum(other)
        out: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                # sqrt(d1)*sqrt(d2) = g*sqrt(d1' * d2') with g = gcd, both
                # squarefree and coprime, so the product radicand is squarefree.
                g = math.gcd(d1, d2)
                rad = (d1 // g) * (d2 // g)
                coef = c1 * c2 * g
                out[rad] = out.get(rad, Fraction(0)) + coef
        result = SurdSum.__new__(SurdSum)
        result._terms = {rad: c for rad, c in out.items() if c != 0}
        return result

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SurdSum":
        """Division by a nonzero exact rational (the only closed case)."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "SurdSum":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are exact")
        result = SurdSum.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- certified evaluation ----------------------------------------------

    def interval(self, bits: int) -> DyadicInterval:
        """Enclosure of the exact value; only leaf square roots round."""
        work = bits + max(1, len(self._terms)).bit_length() + 4
        total = DyadicInterval(Fraction(0), Fraction(0), work)
        for rad, coef in sorted(self._terms.items()):
            if rad == 1:
                total = total + DyadicInterval.point(coef, work)
            else:
                root = _cached_sqrt_interval(rad, work)
                lo = dyadic_round_down(
                    min(root.lo * coef, root.hi * coef), work
                )
                hi = dyadic_round_up(max(root.lo * coef, root.hi * coef), work)
                total = total + DyadicInterval(lo, hi, work)
        return DyadicInterval(total.lo, total.hi, bits)

    def sign(self) -> int:
        """Exact sign via certified_sign (interval first, exact fallback)."""
        return certified_sign(self)

    def _sign_exact(self) -> int:
        """Recursive exact sign: split off one prime p, compare the p-free
        part against sqrt(p) times the rest by squaring both sides."""
        terms = self._terms
        if not terms:
            return 0
        if len(terms) == 1:
            ((rad, coef),) = terms.items()
            return 1 if coef > 0 else -1  # sqrt(rad) > 0 for rad >= 1
        p = None
        for rad in sorted(terms):
            if rad > 1:
                p = _smallest_prime_factor(rad)
                break
        if p is None:  # pure rational with several keys cannot happen
            return (self.rational_part() > 0) - (self.rational_part() < 0)
        a_terms = {rad: c for rad, c in terms.items() if rad % p != 0}
        b_terms = {rad // p: c for rad, c in terms.items() if rad % p == 0}
        A = SurdSum(a_terms)
        B = SurdSum(b_terms)
        sa, sb = _sign_inner(A), _sign_inner(B)
        if sa == 0:
            return sb
        if sb == 0:
            return sa
        if sa == sb:
            return sa
        diff = A * A - SurdSum.from_rational(p) * (B * B)
        return sa * _sign_inner(diff)

    # -- ordering (exact; prefer explicit .sign() in hot paths) ------------

    def __lt__(self, other) -> bool:
        return (self - as_surdsum(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - as_surdsum(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - as_surdsum(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - as_surdsum(other)).sign() >= 0

    def abs(self) -> "SurdSum":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return float(self.interval(64).midpoint())

    def __repr__(self) -> str:
        if not self._terms:
            return "SurdSum(0)"
        parts = []
        for rad, coef in sorted(self._terms.items()):
            parts.append(str(coef) if rad == 1 else f"{coef}*sqrt({rad})")
        return f"SurdSum({' + '.join(parts)})"


def _sign_inner(s: "SurdSum") -> int:
    """Sign with a single cheap interval probe before exact recursion;
    used inside the exact fallback to avoid re-running the full schedule."""
    if s.is_rational():
        v = s.rational_part()
        return (v > 0) - (v < 0)
    sg = s.interval(128).sign_or_none()
    if sg is not None:
        return sg
    return s._sign_exact()


@lru_cache(maxsize=65536)
def _smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("need n >= 2")
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def as_surdsum(x) -> SurdSum:
    """Coerce ints, Fractions and quadratic surds into SurdSum."""
    if isinstance(x, SurdSum):
        return x
    if isinstance(x, (int, Fraction)):
        return SurdSum.from_rational(x)
    if isinstance(x, QuadraticSurd):
        return x.to_surdsum()
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact number")


def certified_sign(x) -> int:
    """Exact sign (-1, 0, +1) of an exact expression.

    Interval evaluation with the doubling schedule (SIGN_BITS_START up to
    SIGN_BITS_CAP); whatever still straddles zero at the cap goes to the
    exact recursive algorithm, which decides every SurdSum-representable
    value (the interesting survivors are exact zeros).
    """
    s = as_surdsum(x)
    if s.is_rational():
        v = s.rational_part()
        return (v > 0) - (v < 0)
    bits = SIGN_BITS_START
    while bits <= SIGN_BITS_CAP:
        sg = s.interval(bits).sign_or_none()
        if sg is not None:
            return sg
        bits *= 2
    nprimes = set()
    for rad in s._terms:
        r = rad
        while r > 1:
            p = _smallest_prime_factor(r)
            nprimes.add(p)
            while r % p == 0:
                r //= p
    if len(nprimes) > 12:
        raise UndecidedSignError(
            f"sign undecided at {SIGN_BITS_CAP} bits and too many radical "
            f"generators ({len(nprimes)}) for the exact fallback"
        )
    return s._sign_exact()
