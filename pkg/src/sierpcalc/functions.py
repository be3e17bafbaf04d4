"""Pullback functions built from text: closed-form expressions and step functions.

Expressions are in the variable ``t`` and parsed with sympy (``^`` means
power), which also supplies exact first and second derivatives and, when it
can find one, an antiderivative. Piecewise-constant functions are written
``"x0,x1,...,xk:v1,...,vk"``: value ``v_i`` on the open interval
``(x_{i-1}, x_i)`` and 0 elsewhere, including at the breakpoints.
"""
from __future__ import annotations

import bisect

import sympy
from gmpy2 import mpq
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .arithmetic import REAL, SIERPINSKI, BijectionContext
from .calculus import PullbackFunction
from .errors import NotDifferentiable
from .rational import parse_rational, to_rational

T = sympy.Symbol("t", real=True)

STEP_DEFINITION = "-1,0,1:-1,1"

_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication_application)


def _exact(expr: sympy.Expr):
    """Evaluate ``expr`` at exact rationals, returning mpq when the value is rational."""

    def call(t):
        if isinstance(t, float):
            return float(expr.subs(T, t).evalf())
        q = to_rational(t)
        value = expr.subs(T, sympy.Rational(int(q.numerator), int(q.denominator)))
        if value.is_Rational:
            return mpq(int(value.p), int(value.q))
        return float(value.evalf(30))

    return call


def parse_expression(text: str) -> sympy.Expr:
    expr = parse_expr(text, local_dict={"t": T, "pi": sympy.pi, "e": sympy.E},
                      transformations=_TRANSFORMS)
    extra = expr.free_symbols - {T}
    if extra:
        raise ValueError(f"unknown symbols in {text!r}: {sorted(map(str, extra))}")
    return sympy.sympify(expr)


def from_expression(text: str, ctx_x: BijectionContext = SIERPINSKI,
                    ctx_y: BijectionContext = SIERPINSKI) -> PullbackFunction:
    """Pullback function with pullback given by a closed-form expression in ``t``."""
    expr = parse_expression(text)
    numeric = sympy.lambdify(T, expr, "math")
    d1 = sympy.diff(expr, T)
    d2 = sympy.diff(d1, T)
    antideriv = sympy.integrate(expr, T)
    integral = None if antideriv.has(sympy.Integral) else _exact(antideriv)
    exact = _exact(expr)

    def a(t):
        # floats take the fast compiled path, rationals stay exact
        if isinstance(t, float):
            return float(numeric(t))
        return exact(t)

    return PullbackFunction(a, ctx_x, ctx_y, a_prime=_exact(d1), a_second=_exact(d2),
                            a_integral=integral, name=text)


class PiecewiseConstant:
    """Real function constant on the open intervals between sorted breakpoints."""

    def __init__(self, breakpoints, values):
        self.breakpoints = [to_rational(b) for b in breakpoints]
        self.values = [to_rational(v) for v in values]
        if len(self.breakpoints) != len(self.values) + 1:
            raise ValueError("need exactly one more breakpoint than values")
        if any(x >= y for x, y in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self._fb = [float(b) for b in self.breakpoints]
        self._fv = [float(v) for v in self.values]

    def __call__(self, t):
        if isinstance(t, float):
            cuts, vals = self._fb, self._fv
        else:
            t = to_rational(t)
            cuts, vals = self.breakpoints, self.values
        i = bisect.bisect_left(cuts, t)
        if i == 0 or i == len(cuts) or cuts[i] == t:
            return 0.0 if cuts is self._fb else mpq(0)
        return vals[i - 1]

    def derivative(self, t):
        exact = not isinstance(t, float)
        cuts = self.breakpoints if exact else self._fb
        if (to_rational(t) if exact else t) in cuts:
            raise NotDifferentiable(f"step function jumps at {t}")
        return mpq(0) if exact else 0.0

    def antiderivative(self, t):
        """``int_{x0}^t`` of the function (exact for rational ``t``)."""
        exact = not isinstance(t, float)
        t = to_rational(t) if exact else t
        cuts = self.breakpoints if exact else self._fb
        vals = self.values if exact else self._fv
        total = mpq(0) if exact else 0.0
        for lo, hi, v in zip(cuts, cuts[1:], vals):
            if t <= lo:
                break
            total += v * (min(t, hi) - lo)
        return total


def parse_piecewise(text: str) -> PiecewiseConstant:
    cuts, _, values = text.partition(":")
    if not values:
        raise ValueError(f"piecewise definition needs 'breakpoints:values', got {text!r}")
    return PiecewiseConstant([parse_rational(c) for c in cuts.split(",")],
                             [parse_rational(v) for v in values.split(",")])


def from_piecewise(text: str, ctx_x: BijectionContext = SIERPINSKI,
                   ctx_y: BijectionContext = REAL) -> PullbackFunction:
    pc = parse_piecewise(text)
    return PullbackFunction(pc, ctx_x, ctx_y, a_prime=pc.derivative,
                            a_second=pc.derivative, a_integral=pc.antiderivative,
                            breakpoints=tuple(pc._fb), name=text)


def step_function(ctx_x: BijectionContext = SIERPINSKI,
                  ctx_y: BijectionContext = REAL) -> PullbackFunction:
    """``A = 1`` on ``f^-1((0,1))``, ``-1`` on ``f^-1((-1,0))``, 0 elsewhere."""
    F = from_piecewise(STEP_DEFINITION, ctx_x, ctx_y)
    return PullbackFunction(F.a, ctx_x, ctx_y, a_prime=F.a_prime, a_second=F.a_second,
                            a_integral=F.a_integral, breakpoints=F.breakpoints, name="step")


def from_definition(text: str, ctx_x: BijectionContext = SIERPINSKI,
              ctx_y: BijectionContext = SIERPINSKI) -> PullbackFunction:
    """``"step"``, a piecewise definition containing ``:``, or an expression in ``t``."""
    if text == "step":
        return step_function(ctx_x, ctx_y)
    if ":" in text:
        return from_piecewise(text, ctx_x, ctx_y)
    return from_expression(text, ctx_x, ctx_y)
