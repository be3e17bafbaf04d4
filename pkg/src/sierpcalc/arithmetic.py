"""Arithmetic induced on a set by a bijection with the real line.

Every operation is pulled back: ``x (+) y = f^-1(f(x) + f(y))`` and so on.
The same functions serve any set given as a :class:`BijectionContext`;
the real line itself is the identity context.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .errors import DivisionByZeroPrime
from .rational import snap_float, to_rational
from .sierpinski import forward, inverse


@dataclass(frozen=True)
class BijectionContext:
    """A set carried onto the reals by ``to_real`` with inverse ``from_real``."""

    label: str
    to_real: Callable[[Any], Any]
    from_real: Callable[[Any], Any]

    def zero(self):
        return self.from_real(0)

    def one(self):
        return self.from_real(1)


def _real_from_real(v):
    return v


def _sierpinski_from_real(v):
    # floats (numeric results) are snapped to a fine ternary grid first
    if isinstance(v, float):
        v = snap_float(v)
    return forward(v)


REAL = BijectionContext("R", _real_from_real, _real_from_real)
SIERPINSKI = BijectionContext("S", inverse, _sierpinski_from_real)


def oplus(ctx: BijectionContext, x, y):
    return ctx.from_real(ctx.to_real(x) + ctx.to_real(y))


def ominus(ctx: BijectionContext, x, y):
    return ctx.from_real(ctx.to_real(x) - ctx.to_real(y))


def odot(ctx: BijectionContext, x, y):
    return ctx.from_real(ctx.to_real(x) * ctx.to_real(y))


def oslash(ctx: BijectionContext, x, y):
    den = ctx.to_real(y)
    if den == 0:
        raise DivisionByZeroPrime(f"division by {y}, whose real image is 0")
    return ctx.from_real(ctx.to_real(x) / den)


def negate(ctx: BijectionContext, x):
    """``0' (-) x``."""
    return ctx.from_real(-ctx.to_real(x))


def embed_natural(ctx: BijectionContext, n: int):
    """The element ``n' = f^-1(n)``."""
    return ctx.from_real(to_rational(int(n)))


def power(ctx: BijectionContext, x, n: int):
    """``x (*) ... (*) x`` with ``n`` factors; ``power(x, 0)`` is ``1'``."""
    if n < 0:
        raise ValueError("power needs n >= 0")
    base = ctx.to_real(x)
    result = to_rational(1) if not isinstance(base, float) else 1.0
    for _ in range(n):
        result = result * base
    return ctx.from_real(result)


def repeated_sum(ctx: BijectionContext, x, n: int):
    """``x (+) ... (+) x`` with ``n`` terms, computed with the induced addition."""
    total = ctx.zero()
    for _ in range(n):
        total = oplus(ctx, total, x)
    return total
