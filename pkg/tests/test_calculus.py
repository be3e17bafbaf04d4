import math
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from sierpcalc import calculus as C
from sierpcalc import numerics
from sierpcalc.arithmetic import REAL, SIERPINSKI as S, embed_natural, odot, ominus, oplus, power
from sierpcalc.errors import MissingAntiderivative, MissingDerivative, NotDifferentiable, ToleranceNotMet
from sierpcalc.functions import from_expression, from_piecewise, from_definition, step_function
from sierpcalc.sierpinski import forward

SMOOTH = ["t^2", "sin(pi*t)", "exp(t/2)"]


def n_(n):
    return embed_natural(S, n)


# -- derivative -----------------------------------------------------------

def test_square_at_three():
    F = from_expression("t^2", S, S)
    assert C.derivative(F, n_(3)) == n_(6)
    assert abs(float(S.to_real(C.derivative(F, n_(3), mode="numeric"))) - 6) < 1e-9


def test_identity_has_unit_derivative():
    F = from_expression("t", S, S)
    for x in (mpq(0), mpq(5, 2), mpq(-7, 3)):
        assert C.derivative(F, forward(x)) == S.one()
    G = from_expression("t", S, REAL)
    for x in (mpq(0), mpq(2), mpq(-1, 9)):
        assert C.derivative(G, forward(x)) == 1


def test_laplacian_examples():
    assert C.laplacian(from_expression("t^2", S, S), forward(mpq(5, 7))) == n_(2)
    assert C.laplacian(from_expression("3*t + 1", S, S), n_(4)) == S.zero()
    assert C.laplacian(from_expression("sin(pi*t)", S, REAL), S.zero()) == 0
    assert abs(C.laplacian(from_expression("t^3", S, REAL), n_(2), mode="numeric") - 12) < 1e-6


def test_missing_closed_forms():
    F = C.PullbackFunction(lambda t: t, S, S)
    with pytest.raises(MissingDerivative):
        C.derivative(F, n_(1))
    with pytest.raises(MissingDerivative):
        C.laplacian(F, n_(1))
    with pytest.raises(MissingAntiderivative):
        C.integrate(F, n_(0), n_(1), mode="exact")


def test_step_is_not_differentiable_at_jump():
    A = step_function(S)
    with pytest.raises(NotDifferentiable):
        C.derivative(A, S.zero(), mode="numeric")
    with pytest.raises(NotDifferentiable):
        C.derivative(A, S.zero(), mode="exact")
    assert C.derivative(A, forward(mpq(1, 2))) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_power_rule(n):
    F = from_expression(f"t^{n}", S, S)
    for x in (n_(2), forward(mpq(-3, 4)), forward(mpq(5, 2))):
        assert F(x) == power(S, x, n)
        assert C.derivative(F, x) == odot(S, n_(n), power(S, x, n - 1))


def test_difference_quotient_converges_first_order():
    F = from_expression("t^3 + t", S, S)
    x = forward(mpq(1, 2))
    exact = float(S.to_real(C.derivative(F, x)))
    errors = [abs(float(S.to_real(C.difference_quotient(F, x, h))) - exact) for h in (1e-2, 1e-3, 1e-4)]
    assert errors[0] > errors[1] > errors[2]
    # first order: each tenfold step reduction cuts the error about tenfold
    for e_big, e_small in zip(errors, errors[1:]):
        assert 5 < e_big / e_small < 20


def test_black_box_maps_are_wrapped_as_pullbacks():
    # A(x) = x (*) x (+) 1' written directly on points of S
    A = C.PullbackFunction.from_map(lambda x: oplus(S, odot(S, x, x), S.one()), S, S)
    assert A(n_(3)) == n_(10)
    assert abs(float(S.to_real(C.derivative(A, n_(3), mode="numeric"))) - 6) < 1e-6


# -- integrate ------------------------------------------------------------

def test_integral_examples():
    one = from_expression("1", S, REAL)
    assert C.integrate(one, n_(0), n_(1), mode="exact") == 1
    assert abs(C.integrate(one, n_(0), n_(1)) - 1) < 1e-12
    ident = from_expression("t", S, S)
    assert C.integrate(ident, n_(0), n_(2), mode="exact") == n_(2)
    T = S.one()
    assert abs(C.integrate(step_function(S), ominus(S, S.zero(), T), T)) < 1e-8


def test_reversed_limits_negate():
    F = from_expression("exp(t)", S, REAL)
    a, b = forward(mpq(-1, 3)), forward(mpq(7, 5))
    assert C.integrate(F, a, b) == pytest.approx(-C.integrate(F, b, a), abs=1e-12)


def test_piecewise_integral_uses_breakpoints():
    F = from_piecewise("0,1/3,1:2,-1")
    exact = C.integrate(F, S.zero(), S.one(), mode="exact")
    assert exact == mpq(0)
    assert abs(C.integrate(F, S.zero(), S.one())) < 1e-10


def test_tolerance_not_met():
    # a jump without a declared breakpoint cannot be resolved in 8 levels
    F = C.PullbackFunction(lambda t: 1.0 if t > 0.3 else 0.0)
    with pytest.raises(ToleranceNotMet):
        C.integrate(F, 0, 1, tol=1e-12, max_depth=8)


def test_quadrature_matches_closed_form():
    rng = random.Random(11)
    for expr in SMOOTH:
        F = from_expression(expr, S, REAL)
        for _ in range(5):
            lo = forward(mpq(rng.randint(-300, 300), 100))
            hi = forward(mpq(rng.randint(-300, 300), 100))
            assert abs(C.integrate(F, lo, hi) - C.integrate(F, lo, hi, mode="exact")) < 1e-8


# -- fundamental theorem ----------------------------------------------------

@pytest.mark.parametrize("expr", SMOOTH)
def test_ftc_first(expr):
    F = from_expression(expr, S, S)
    rng = random.Random(hash(expr) & 0xFFFF)
    for _ in range(20):
        X = forward(mpq(rng.randint(-2000, 2000), 1000))
        Y = forward(mpq(rng.randint(-2000, 2000), 1000))
        lhs = C.derivative(C.integral_function(F, Y), X, mode="numeric")
        assert abs(float(S.to_real(lhs)) - float(S.to_real(F(X)))) < 1e-6


@pytest.mark.parametrize("expr", SMOOTH)
def test_ftc_second(expr):
    F = from_expression(expr, S, S)
    D = C.derivative_function(F, mode="numeric")
    rng = random.Random(len(expr))
    for _ in range(20):
        X = forward(mpq(rng.randint(-2000, 2000), 1000))
        Y = forward(mpq(rng.randint(-2000, 2000), 1000))
        lhs = C.integrate(D, Y, X)
        rhs = ominus(S, F(X), F(Y))
        assert abs(float(S.to_real(lhs)) - float(S.to_real(rhs))) < 1e-6


# -- linearity --------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.integers(-300, 300), st.integers(-300, 300))
def test_linearity(p, q):
    # dyadic points keep the antiderivative's ternary periods short
    F, G = from_expression("t^3", S, S), from_expression("2*t - 5", S, S)
    H = C.add(F, G)
    x, y = forward(mpq(p, 8)), forward(mpq(q, 8))
    assert C.derivative(H, x) == oplus(S, C.derivative(F, x), C.derivative(G, x))
    assert C.integrate(H, x, y, mode="exact") == oplus(
        S, C.integrate(F, x, y, mode="exact"), C.integrate(G, x, y, mode="exact"))


# -- numerics kernels -------------------------------------------------------

def test_richardson_accuracy():
    assert numerics.derivative(math.exp, 0.3) == pytest.approx(math.exp(0.3), rel=1e-10)
    assert numerics.second_derivative(math.sin, 1.1) == pytest.approx(-math.sin(1.1), rel=1e-7)


def test_simpson_accuracy():
    assert numerics.adaptive_simpson(math.cos, 0, math.pi / 2) == pytest.approx(1.0, abs=1e-10)
    # oscillatory integrand whose coarse samples all vanish
    value = numerics.adaptive_simpson(lambda t: math.sin(8 * math.pi * t) ** 2, 0, 1)
    assert value == pytest.approx(0.5, abs=1e-9)


def test_on_contexts_rebinds_sets():
    F = from_definition("t^2", S, S)
    G = C.on_contexts(F, REAL, REAL)
    assert G(mpq(3)) == 9
