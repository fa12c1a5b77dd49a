"""Deterministic CSV emission with exact decimal rendering.

Interval endpoints are printed at 15 significant digits with directed
rounding (lower bounds down, upper bounds up) so the printed pair still
encloses the exact value.  Every file ends with a comment block recording
the full run configuration; nothing time- or path-dependent is written, so
identical configurations produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = ["format_decimal", "render_csv", "write_csv"]

SIG_DIGITS = 15


def format_decimal(x, sig: int = SIG_DIGITS, direction: int = 0) -> str:
    """Decimal rendering of an exact rational at `sig` significant digits.

    direction -1 rounds toward -inf, +1 toward +inf, 0 to nearest (half
    away from zero).  The result is parseable by float() and by Fraction().
    """
    x = Fraction(x)
    if x == 0:
        return "0"
    neg = x < 0
    ax = -x if neg else x
    e10 = len(str(ax.numerator)) - len(str(ax.denominator))
    while ax >= Fraction(10) ** (e10 + 1):
        e10 += 1
    while ax < Fraction(10) ** e10:
        e10 -= 1
    shift = sig - 1 - e10
    scaled = x * Fraction(10) ** shift  # signed; |scaled| in [10^(sig-1), 10^sig)
    if direction < 0:
        m = scaled.numerator // scaled.denominator
    elif direction > 0:
        m = -((-scaled.numerator) // scaled.denominator)
    else:
        half = Fraction(1, 2) if x > 0 else -Fraction(1, 2)
        t = scaled + half
        m = t.numerator // t.denominator if x > 0 else -((-t.numerator) // t.denominator)
    mag = abs(m)
    if mag >= 10**sig:
        mag //= 10
        e10 += 1
    digits = str(mag).rjust(sig, "0")
    if -4 <= e10 < sig:
        if e10 >= 0:
            intpart, fracpart = digits[: e10 + 1], digits[e10 + 1 :]
        else:
            intpart, fracpart = "0", "0" * (-e10 - 1) + digits
        fracpart = fracpart.rstrip("0")
        body = intpart + ("." + fracpart if fracpart else "")
    else:
        mantissa = digits[0] + ("." + digits[1:].rstrip("0") if digits[1:].rstrip("0") else "")
        body = f"{mantissa}e{e10:+03d}"
    return ("-" if neg else "") + body


def render_csv(
    header: Sequence[str],
    rows: Iterable[Sequence],
    metadata: Mapping[str, object] | None = None,
) -> str:
    """CSV text (RFC-4180-style quoting) with a trailing comment block."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([str(cell) for cell in row])
    if metadata:
        for key in metadata:
            buf.write(f"# {key} = {metadata[key]}\n")
    return buf.getvalue()


def write_csv(
    path: str | None,
    header: Sequence[str],
    rows: Iterable[Sequence],
    metadata: Mapping[str, object] | None = None,
) -> str:
    """Write (or return, when path is None) the rendered CSV."""
    text = render_csv(header, rows, metadata)
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text
