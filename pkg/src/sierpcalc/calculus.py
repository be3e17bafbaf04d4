"""Derivatives and integrals of functions between bijection-equipped sets.

A function ``A: X -> Y`` is represented by its pullback ``a = f_Y o A o f_X^-1``,
an ordinary real function. Then

    DA/Dx        = f_Y^-1( a'(f_X(x)) )
    int_Y^X A Dx = f_Y^-1( int_{f_X(Y)}^{f_X(X)} a(t) dt )

so every computation happens on the real line and is mapped back at the end.
Limits in X are understood through the pullback, which is why the
discontinuity of the Sierpinski map never gets in the way.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from . import numerics
from .arithmetic import REAL, BijectionContext, ominus, oplus, oslash
from .errors import MissingAntiderivative, MissingDerivative
from .rational import snap_float

RealFunc = Callable[[object], object]


@dataclass(frozen=True)
class PullbackFunction:
    """``A: X -> Y`` given by its real pullback ``a`` and the two contexts.

    ``a`` must accept floats (numeric paths). The optional closed forms
    ``a_prime``, ``a_second`` and ``a_integral`` are called with exact
    rationals in exact mode and should return exact values where they can.
    ``breakpoints`` lists real abscissae where ``a`` jumps; quadrature never
    lets a panel straddle one. Callables must be pure and reentrant.
    """

    a: RealFunc
    ctx_x: BijectionContext = REAL
    ctx_y: BijectionContext = REAL
    a_prime: Optional[RealFunc] = None
    a_second: Optional[RealFunc] = None
    a_integral: Optional[RealFunc] = None
    breakpoints: tuple = ()
    name: str = field(default="a", compare=False)

    def __call__(self, x):
        """``A(x) = f_Y(a(f_X^-1 ... ))`` evaluated through the pullback."""
        return self.ctx_y.from_real(self.a(self.ctx_x.to_real(x)))

    def pullback(self, t):
        return self.a(t)

    @classmethod
    def from_map(cls, A: Callable, ctx_x: BijectionContext, ctx_y: BijectionContext, **kw):
        """Wrap a black-box map on elements as ``a = f_Y o A o f_X^-1``."""

        def a(t):
            if isinstance(t, float):
                # numeric callers expect floats back, not gmpy2's mpfr
                return float(ctx_y.to_real(A(ctx_x.from_real(snap_float(t)))))
            return ctx_y.to_real(A(ctx_x.from_real(t)))

        return cls(a, ctx_x, ctx_y, **kw)


def _float(v) -> float:
    return float(v)


def _to_y(F: PullbackFunction, value):
    return F.ctx_y.from_real(value)


def derivative(F: PullbackFunction, x, mode: str = "exact", h0: float = 1e-2):
    """``DA/Dx`` at the element ``x`` of X.

    ``mode="exact"`` uses the closed-form ``a_prime``; ``mode="numeric"``
    uses Richardson-extrapolated central differences of ``a`` starting at
    step ``h0``.
    """
    t = F.ctx_x.to_real(x)
    if mode == "exact":
        if F.a_prime is None:
            raise MissingDerivative(f"{F.name} has no closed-form derivative")
        return _to_y(F, F.a_prime(t))
    if mode == "numeric":
        return _to_y(F, numerics.derivative(F.a, _float(t), h0))
    raise ValueError(f"unknown mode {mode!r}")


def derivative_function(F: PullbackFunction, mode: str = "exact", h0: float = 1e-2) -> PullbackFunction:
    """The function ``DA/Dx`` itself, as a pullback function X -> Y."""
    if mode == "exact":
        if F.a_prime is None:
            raise MissingDerivative(f"{F.name} has no closed-form derivative")
        return PullbackFunction(F.a_prime, F.ctx_x, F.ctx_y, a_prime=F.a_second,
                                a_integral=F.a, name=f"{F.name}'")
    if mode == "numeric":
        a = F.a
        return PullbackFunction(lambda t: numerics.derivative(a, _float(t), h0),
                                F.ctx_x, F.ctx_y, a_integral=F.a, name=f"{F.name}'")
    raise ValueError(f"unknown mode {mode!r}")


def laplacian(F: PullbackFunction, x, mode: str = "exact", h0: float = 1e-2):
    """Second derivative ``D/Dx DA/Dx``, i.e. ``f_Y^-1(a''(f_X(x)))``."""
    t = F.ctx_x.to_real(x)
    if mode == "exact":
        if F.a_second is None:
            raise MissingDerivative(f"{F.name} has no closed-form second derivative")
        return _to_y(F, F.a_second(t))
    if mode == "numeric":
        return _to_y(F, numerics.second_derivative(F.a, _float(t), h0))
    raise ValueError(f"unknown mode {mode!r}")


def integrate(F: PullbackFunction, lower, upper, mode: str = "quadrature", tol: float = 1e-8,
              max_depth: int = numerics.MAX_DEPTH):
    """``int_lower^upper A(x) Dx`` for elements ``lower``, ``upper`` of X."""
    lo, hi = F.ctx_x.to_real(lower), F.ctx_x.to_real(upper)
    if mode == "exact":
        if F.a_integral is None:
            raise MissingAntiderivative(f"{F.name} has no closed-form antiderivative")
        top, bottom = F.a_integral(hi), F.a_integral(lo)
        if isinstance(top, float) or isinstance(bottom, float):
            # keep mixed float/mpq arithmetic out of gmpy2's mpfr
            return _to_y(F, float(top) - float(bottom))
        return _to_y(F, top - bottom)
    if mode == "quadrature":
        value = numerics.adaptive_simpson(F.a, _float(lo), _float(hi), tol, F.breakpoints, max_depth)
        return _to_y(F, value)
    raise ValueError(f"unknown mode {mode!r}")


def integral_function(F: PullbackFunction, lower, tol: float = 1e-8) -> PullbackFunction:
    """``X -> int_lower^X A(x) Dx`` as a pullback function, evaluated by quadrature."""
    lo = _float(F.ctx_x.to_real(lower))
    a, cuts = F.a, F.breakpoints

    def b(t):
        return numerics.adaptive_simpson(a, lo, _float(t), tol, cuts)

    return PullbackFunction(b, F.ctx_x, F.ctx_y, a_prime=None, name=f"int {F.name}")


def add(F: PullbackFunction, G: PullbackFunction) -> PullbackFunction:
    """Pointwise ``A (+)_Y B``; its pullback is ``a + b``."""
    if F.ctx_x is not G.ctx_x or F.ctx_y is not G.ctx_y:
        raise ValueError("functions live on different contexts")

    def both(f, g):
        if f is None or g is None:
            return None
        return lambda t: f(t) + g(t)

    return PullbackFunction(
        both(F.a, G.a), F.ctx_x, F.ctx_y,
        a_prime=both(F.a_prime, G.a_prime),
        a_second=both(F.a_second, G.a_second),
        a_integral=both(F.a_integral, G.a_integral),
        breakpoints=tuple(sorted(set(F.breakpoints) | set(G.breakpoints))),
        name=f"({F.name} + {G.name})",
    )


def on_contexts(F: PullbackFunction, ctx_x: BijectionContext, ctx_y: BijectionContext) -> PullbackFunction:
    """The same pullback read as a function between other sets."""
    return replace(F, ctx_x=ctx_x, ctx_y=ctx_y)


def difference_quotient(F: PullbackFunction, x, h):
    """``(A(x (+)_X f_X^-1(h)) (-)_Y A(x)) (/)_Y f_Y^-1(h)`` for a finite real ``h``.

    This is the limit form of the derivative before ``h -> 0``, computed with
    the induced arithmetics only.
    """
    X, Y = F.ctx_x, F.ctx_y
    shifted = oplus(X, x, X.from_real(h))
    return oslash(Y, ominus(Y, F(shifted), F(x)), Y.from_real(h))
