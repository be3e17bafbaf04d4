"""Coercion of user values into exact rationals.

The package-wide rational type is :class:`gmpy2.mpq`. It compares and hashes
equal to :class:`fractions.Fraction` and ``int``, so callers may pass either.
"""
from __future__ import annotations

import math
import re
from decimal import Decimal
from fractions import Fraction

from gmpy2 import mpq, mpz

Rational = type(mpq(0))

_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$")


def to_rational(value) -> Rational:
    """Return ``value`` as an exact ``mpq``.

    Accepts ints, Fractions, mpq/mpz, Decimals and strings of the form
    ``"p/q"`` or a finite decimal such as ``"-2.5"`` (read as p/10^k).
    Floats are rejected; use :func:`snap_float` to pick a rational for them.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational literal")
    if isinstance(value, (int, type(mpz(0)))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"not a finite decimal: {value}")
        f = Fraction(value)
        return mpq(f.numerator, f.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; use snap_float() first")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Rational:
    m = _LITERAL.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return mpq(int(m.group(1)), den)
    if _DECIMAL.match(text):
        return to_rational(Decimal(text.strip()))
    raise ValueError(f"not a rational literal: {text!r}")


def snap_float(value: float, radix: int = 3, places: int = 34) -> Rational:
    """Round a float to the nearest multiple of ``radix**-places``.

    Used where a floating-point result (numeric derivative, quadrature) has to
    re-enter an exact pipeline. Snapping to the ternary grid keeps the
    expansion terminating, so the digit map stays cheap.
    """
    if not isinstance(value, float):
        return to_rational(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot snap non-finite value {value}")
    scale = radix**places
    return mpq(round(Fraction(value) * scale), scale)


def format_rational(q) -> str:
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
