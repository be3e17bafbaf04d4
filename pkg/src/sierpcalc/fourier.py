"""Trigonometric basis, scalar product and Fourier series for functions on S.

For ``G_j = g_j o f_S`` the scalar product over ``[(-)T, T]`` reduces to the
ordinary one of the pullbacks on ``[-f_S(T), f_S(T)]``, so the basis functions
are ``C_n = c_n o f_S``, ``S_n = s_n o f_S`` with the usual cosines and sines
(``c_0 = 1/sqrt 2``, ``s_0 = 0``). Coefficients are always computed by
quadrature; closed forms are only used to check them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import numerics
from .arithmetic import REAL, SIERPINSKI
from .calculus import PullbackFunction
from .sierpinski import SierpinskiPoint, inverse

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def basis_c(n: int, y: float) -> float:
    if n < 0:
        raise ValueError("basis index must be >= 0")
    if n == 0:
        return INV_SQRT2
    return math.cos(n * math.pi * y)


def basis_s(n: int, y: float) -> float:
    if n < 0:
        raise ValueError("basis index must be >= 0")
    if n == 0:
        return 0.0
    return math.sin(n * math.pi * y)


def basis_on_S(n: int, x: SierpinskiPoint, kind: str) -> float:
    """``C_n(x)`` or ``S_n(x)``: the real basis function composed with ``f_S``."""
    y = float(inverse(x))
    if kind == "C":
        return basis_c(n, y)
    if kind == "S":
        return basis_s(n, y)
    raise ValueError(f"kind must be 'C' or 'S', got {kind!r}")


def basis_function(n: int, kind: str, horizon: float = 1.0, ctx_x=SIERPINSKI) -> PullbackFunction:
    """``C_n`` or ``S_n`` as a pullback function ``X -> R``.

    For a horizon ``L = f_X(T)`` other than 1 the basis is rescaled to stay
    orthonormal on ``[-L, L]``.
    """
    base = basis_c if kind == "C" else basis_s
    norm = 1.0 / math.sqrt(horizon)
    if horizon == 1.0:
        def a(t):
            return base(n, float(t))
    else:
        def a(t):
            return norm * base(n, float(t) / horizon)
    return PullbackFunction(a, ctx_x, REAL, name=f"{kind.lower()}_{n}")


def _horizon(T, ctx_x) -> float:
    L = float(ctx_x.to_real(T))
    if L <= 0:
        raise ValueError("the horizon T must have f_X(T) > 0")
    return L


def scalar_product(G1: PullbackFunction, G2: PullbackFunction, T=None, tol: float = 1e-8) -> float:
    """``<G1|G2> = int_{(-)T}^{T} G1 (*)_R G2 Dx``, by quadrature on the pullbacks."""
    if G1.ctx_x is not G2.ctx_x:
        raise ValueError("scalar product needs a shared domain context")
    if G1.ctx_y is not REAL or G2.ctx_y is not REAL:
        raise ValueError("scalar product is defined for real-valued functions")
    ctx = G1.ctx_x
    if T is None:
        T = ctx.one()
    L = _horizon(T, ctx)
    g1, g2 = G1.a, G2.a
    cuts = set(G1.breakpoints) | set(G2.breakpoints)
    return numerics.adaptive_simpson(lambda t: g1(t) * g2(t), -L, L, tol, cuts)


@dataclass(frozen=True)
class FourierSeries:
    """Truncated series ``sum_n C_n <C_n|A> + S_n <S_n|A>`` up to ``n_terms``.

    ``cos_coeffs`` holds n = 0..N, ``sin_coeffs`` holds n = 1..N.
    """

    horizon: float
    n_terms: int
    cos_coeffs: tuple
    sin_coeffs: tuple

    def __post_init__(self):
        if len(self.cos_coeffs) != self.n_terms + 1 or len(self.sin_coeffs) != self.n_terms:
            raise ValueError("coefficient lists must have lengths N+1 and N")

    def evaluate_real(self, y):
        """Partial sum at real abscissae ``y`` (scalar or array)."""
        y = np.asarray(y, dtype=float)
        L = self.horizon
        u = y / L
        norm = 1.0 / math.sqrt(L)
        total = np.full_like(u, self.cos_coeffs[0] * INV_SQRT2 * norm)
        for n in range(1, self.n_terms + 1):
            c, s = self.cos_coeffs[n], self.sin_coeffs[n - 1]
            if c:
                total = total + c * norm * np.cos(n * np.pi * u)
            if s:
                total = total + s * norm * np.sin(n * np.pi * u)
        return total if total.ndim else float(total)


def analyze(A: PullbackFunction, N: int, T=None, breakpoints: Sequence[float] = (),
            tol: float = 1e-8) -> FourierSeries:
    """Fourier coefficients of ``A: X -> R`` as pullback scalar products."""
    if N < 0:
        raise ValueError("N must be >= 0")
    ctx = A.ctx_x
    if T is None:
        T = ctx.one()
    L = _horizon(T, ctx)
    if breakpoints:
        A = PullbackFunction(A.a, A.ctx_x, A.ctx_y, breakpoints=tuple(set(A.breakpoints) | set(breakpoints)),
                             name=A.name)
    cos_coeffs = [scalar_product(basis_function(n, "C", L, ctx), A, T, tol) for n in range(N + 1)]
    sin_coeffs = [scalar_product(basis_function(n, "S", L, ctx), A, T, tol) for n in range(1, N + 1)]
    return FourierSeries(L, N, tuple(cos_coeffs), tuple(sin_coeffs))


def reconstruct(series: FourierSeries, x: SierpinskiPoint) -> float:
    """Value of the partial sum at the point ``x`` of S."""
    return float(series.evaluate_real(float(inverse(x))))


def step_coefficient(n: int) -> float:
    """Closed-form sine coefficient ``2(1 - (-1)^n)/(n pi)`` of the odd unit step."""
    return 2.0 * (1 - (-1) ** n) / (n * math.pi)


def series_to_csv(series: FourierSeries) -> str:
    rows = ["n,cos_coeff,sin_coeff"]
    for n in range(series.n_terms + 1):
        s = series.sin_coeffs[n - 1] if n else 0.0
        rows.append(f"{n},{series.cos_coeffs[n]!r},{s!r}")
    return "\n".join(rows) + "\n"


def series_from_csv(text: str, horizon: float = 1.0) -> FourierSeries:
    lines = text.strip("\n").split("\n")
    if lines[0] != "n,cos_coeff,sin_coeff":
        raise ValueError("unexpected series CSV header")
    cos, sin = [], []
    for i, line in enumerate(lines[1:]):
        n, c, s = line.split(",")
        if int(n) != i:
            raise ValueError("series rows must be consecutive from n = 0")
        cos.append(float(c))
        if i:
            sin.append(float(s))
    return FourierSeries(horizon, len(cos) - 1, tuple(cos), tuple(sin))
