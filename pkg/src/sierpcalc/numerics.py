"""Floating-point kernels: Richardson-extrapolated differences, adaptive Simpson."""
from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from .errors import NotDifferentiable, ToleranceNotMet

Func = Callable[[float], float]

RICHARDSON_LEVELS = 4
TARGET_RTOL = 1e-8
STABILITY_RTOL = 1e-6


def _richardson(estimate: Callable[[float], float], h0: float) -> float:
    """Extrapolate ``estimate(h)`` (error series in even powers of h) to h -> 0.

    Steps are halved ``RICHARDSON_LEVELS`` times. Returns as soon as two
    successive diagonal entries agree to ``TARGET_RTOL``; raises
    :class:`NotDifferentiable` if the last two still differ by more than
    ``STABILITY_RTOL``.
    """
    table: list[list[float]] = []
    h = h0
    best = prev = None
    for i in range(RICHARDSON_LEVELS + 1):
        row = [estimate(h)]
        for j in range(1, i + 1):
            factor = 4.0**j
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (factor - 1.0))
        table.append(row)
        prev, best = best, row[-1]
        if prev is not None and abs(best - prev) <= TARGET_RTOL * max(1.0, abs(best)):
            return best
        h /= 2.0
    if abs(best - prev) > STABILITY_RTOL * max(1.0, abs(best)):
        raise NotDifferentiable(
            f"Richardson estimates did not settle: {prev!r} vs {best!r}"
        )
    return best


def derivative(f: Func, t: float, h0: float = 1e-2) -> float:
    """First derivative by central differences with Richardson extrapolation."""
    return _richardson(lambda h: (f(t + h) - f(t - h)) / (2.0 * h), h0)


def second_derivative(f: Func, t: float, h0: float = 1e-2) -> float:
    ft = f(t)
    return _richardson(lambda h: (f(t + h) - 2.0 * ft + f(t - h)) / (h * h), h0)


MAX_DEPTH = 40
# panels are never accepted above this depth: a coarse Simpson estimate can
# vanish by accident for oscillatory integrands sampled on their zeros
MIN_DEPTH = 3


def _inside(x: float, toward: float) -> float:
    return math.nextafter(x, toward)


def _simpson_panel(f: Func, lo: float, hi: float, tol: float, max_depth: int) -> float:
    # endpoints are nudged one ulp inward so jumps sitting exactly on a
    # breakpoint contribute their one-sided limits
    flo = f(_inside(lo, hi))
    fhi = f(_inside(hi, lo))
    mid = 0.5 * (lo + hi)
    fmid = f(mid)
    whole = (hi - lo) * (flo + 4.0 * fmid + fhi) / 6.0
    # explicit stack instead of recursion: (lo, hi, flo, fmid, fhi, whole, tol, depth)
    stack = [(lo, hi, flo, fmid, fhi, whole, tol, 0)]
    total = 0.0
    while stack:
        a, b, fa, fm, fb, s, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
        right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
        delta = left + right - s
        if depth >= MIN_DEPTH and abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
            continue
        if depth + 1 >= max_depth:
            raise ToleranceNotMet(
                f"adaptive Simpson exceeded {max_depth} levels on [{a!r}, {b!r}]"
            )
        stack.append((a, m, fa, flm, fm, left, eps / 2.0, depth + 1))
        stack.append((m, b, fm, frm, fb, right, eps / 2.0, depth + 1))
    return total


def adaptive_simpson(
    f: Func,
    lo: float,
    hi: float,
    tol: float = 1e-8,
    breakpoints: Iterable[float] = (),
    max_depth: int = MAX_DEPTH,
) -> float:
    """Integral of ``f`` over ``[lo, hi]`` to absolute tolerance ``tol``.

    The interval is first cut at every breakpoint inside it; the tolerance is
    shared between the pieces in proportion to their length. Reversed limits
    give the negated integral.
    """
    lo, hi = float(lo), float(hi)
    if lo == hi:
        return 0.0
    if hi < lo:
        return -adaptive_simpson(f, hi, lo, tol, breakpoints, max_depth)
    cuts = _cuts(lo, hi, breakpoints)
    span = hi - lo
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        total += _simpson_panel(f, a, b, tol * (b - a) / span, max_depth)
    return total


def _cuts(lo: float, hi: float, breakpoints: Iterable[float]) -> Sequence[float]:
    inner = sorted({float(p) for p in breakpoints if lo < float(p) < hi})
    return [lo, *inner, hi]
