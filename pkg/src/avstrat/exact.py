"""Exact number handling shared across the library.

Utilities are stored as integer millionths ("micro-units") so that sums of
table values like 0.05 + 0.10 never pick up binary float noise.  Everything
downstream (tie-break probabilities, expected utilities) is computed with
:class:`fractions.Fraction`, so results are exact rationals end to end.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Union

SCALE = 10**6

Number = Union[int, float, str, Fraction, Decimal]


def exact_fraction(value: Number) -> Fraction:
    """Convert a number to an exact Fraction.

    Floats are read through their shortest decimal representation (``repr``),
    so ``0.05`` means five hundredths, not the nearest binary double.
    Strings may be decimals ("0.25") or ratios ("1/3").
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        try:
            return Fraction(repr(value))
        except ValueError:
            raise ValueError(f"utility values must be finite, got {value!r}") from None
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a number: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as a number")


def to_micro(value: Number) -> int:
    """Quantize a number to integer millionths (round half to even)."""
    return round(exact_fraction(value) * SCALE)


def micro_to_fraction(micro: int) -> Fraction:
    return Fraction(micro, SCALE)


def format_exact(value: Fraction) -> str:
    """Render a rational as a decimal string.

    Values with a 10-smooth denominator print exactly with trailing zeros
    trimmed ("0.25", "-0.75", "3"); anything else falls back to six decimal
    places.  Used for human-facing report columns.
    """
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{float(value):.6f}"
    # Rescale to a power-of-ten denominator and place the point by hand;
    # this stays exact where Decimal division would round.
    exp = max(twos, fives)
    scaled = abs(value.numerator) * 2 ** (exp - twos) * 5 ** (exp - fives)
    digits = str(scaled).rjust(exp + 1, "0")
    text = f"{digits[:-exp]}.{digits[-exp:]}".rstrip("0").rstrip(".")
    return ("-" if value.numerator < 0 else "") + text


def format_csv_utility(value: Fraction) -> str:
    """Fixed six-decimal rendering used by the sweep CSV contract."""
    return f"{float(value):.6f}"
