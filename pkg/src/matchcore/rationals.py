"""Exact rational numbers: parsing, formatting, and float rejection.

Every number in this package is a ``fractions.Fraction``, which is stored
in lowest terms with a positive denominator. Binary floats are rejected at
every entry point because they cannot represent most decimal or rational
inputs exactly.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def ensure_rational(value) -> Fraction:
    """Coerce ints, strings, and Fractions to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(
        f"expected an exact rational (int, Fraction, or string), got {type(value).__name__}"
    )


def parse_rational(token: str) -> Fraction:
    """Parse ``p``, ``p/q``, or a finite decimal literal, exactly.

    Decimal literals convert without rounding: ``1.5`` becomes ``3/2``.
    """
    text = token.strip()
    if not text:
        raise ValueError("empty rational literal")
    if any(ch in text for ch in "eE"):
        raise ValueError(f"exponent notation is not accepted: {token!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {token!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render as ``p/q``, or just ``p`` when the denominator is one."""
    return str(ensure_rational(value))
