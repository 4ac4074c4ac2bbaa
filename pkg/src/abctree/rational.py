"""Exact rational scalars and their canonical text form.

Every bound, strength, and time value in this package is an exact
nonnegative rational.  We use :class:`fractions.Fraction` directly: it is
always stored in lowest terms with a positive denominator, which is
precisely the representation the rest of the package relies on.  The
canonical text form is ``p/q``, with plain ``p`` as integer shorthand.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

RationalLike = Fraction | int | str


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts Fractions, ints, and strings (``"p/q"``, ``"p"``, or a decimal
    literal such as ``"0.5"``, all parsed exactly).  Floats are rejected:
    they carry binary rounding the caller may not intend.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(
        f"expected an exact rational (Fraction, int, or 'p/q' string), got {value!r}"
    )


def parse_rational(text: str) -> Fraction:
    """Parse the ``p/q`` / integer text form into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    """Render a rational as ``p/q``, or ``p`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
