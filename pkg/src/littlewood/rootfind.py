"""Certified real-root isolation for low-degree polynomials with exact
coefficients.

Polynomials are coefficient lists (ascending powers) of SurdSum / Fraction
/ int entries evaluated exactly at rational points, so every sign used by
the bisections is certified.  Roots are isolated by recursing on the
derivative: between consecutive critical points the polynomial is strictly
monotone and plain sign-change bisection applies.  Tangential (even-order)
roots sitting exactly at a tested level are detected only when a probe
lands on them; the callers use generic levels where that cannot happen,
and an exact zero at a probe point is returned as a degenerate interval.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactnum import SurdSum, as_surdsum, certified_sign

__all__ = [
    "poly_eval",
    "poly_derivative",
    "poly_sign_at",
    "root_magnitude_bound",
    "bisect_root",
    "isolate_roots",
]

Coeffs = Sequence


def poly_eval(coeffs: Coeffs, t: Fraction) -> SurdSum:
    """Horner evaluation at an exact rational point."""
    acc = as_surdsum(0)
    for c in reversed(list(coeffs)):
        acc = acc * t + as_surdsum(c)
    return acc


def poly_derivative(coeffs: Coeffs) -> list[SurdSum]:
    return [as_surdsum(c) * k for k, c in enumerate(coeffs) if k >= 1]


def poly_sign_at(coeffs: Coeffs, t: Fraction) -> int:
    return certified_sign(poly_eval(coeffs, t))


def _trim(coeffs: Coeffs) -> list[SurdSum]:
    out = [as_surdsum(c) for c in coeffs]
    while out and certified_sign(out[-1]) == 0:
        out.pop()
    return out


def root_magnitude_bound(coeffs: Coeffs) -> Fraction:
    """Rational R with all real roots in (-R, R) (Cauchy bound, certified
    through upper intervals of |c_i| and a positive lower interval of the
    leading coefficient)."""
    trimmed = _trim(coeffs)
    if len(trimmed) <= 1:
        raise ValueError("constant polynomial has no root bound")
    bits = 64
    while True:
        lead = trimmed[-1].interval(bits).abs()
        if lead.lo > 0:
            break
        bits *= 2
    top = Fraction(0)
    for c in trimmed[:-1]:
        top = max(top, c.interval(bits).abs().hi)
    return 1 + top / lead.lo


def bisect_root(
    coeffs: Coeffs, lo: Fraction, hi: Fraction, tol: Fraction
) -> tuple[Fraction, Fraction]:
    """Shrink a bracketing interval (opposite endpoint signs) below tol."""
    s_lo = poly_sign_at(coeffs, lo)
    s_hi = poly_sign_at(coeffs, hi)
    if s_lo == 0:
        return lo, lo
    if s_hi == 0:
        return hi, hi
    if s_lo == s_hi:
        raise ValueError("endpoints do not bracket a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s_mid = poly_sign_at(coeffs, mid)
        if s_mid == 0:
            return mid, mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def isolate_roots(
    coeffs: Coeffs, lo: Fraction, hi: Fraction, tol: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """All real roots in [lo, hi] as disjoint intervals of width <= tol,
    in increasing order.  Exact-zero probes yield degenerate intervals."""
    trimmed = _trim(coeffs)
    lo, hi = Fraction(lo), Fraction(hi)
    if hi < lo:
        return []
    if len(trimmed) == 0:
        raise ValueError("zero polynomial has no isolated roots")
    if len(trimmed) == 1:
        return []
    cuts: list[Fraction] = [lo, hi]
    if len(trimmed) > 2:
        crit_tol = min(tol, (hi - lo) or tol) / 4
        for c_lo, c_hi in isolate_roots(poly_derivative(trimmed), lo, hi, crit_tol):
            cuts.extend((c_lo, c_hi))
    cuts = sorted(set(cuts))
    roots: list[tuple[Fraction, Fraction]] = []
    signs = {t: poly_sign_at(trimmed, t) for t in cuts}
    for a, b in zip(cuts, cuts[1:]):
        sa, sb = signs[a], signs[b]
        if sa == 0:
            if not roots or roots[-1][1] < a:
                roots.append((a, a))
            continue
        if sb == 0:
            continue  # handled as the left endpoint of the next piece
        if sa != sb:
            roots.append(bisect_root(trimmed, a, b, tol))
    if signs[hi] == 0 and (not roots or roots[-1][1] < hi):
        roots.append((hi, hi))
    return roots
