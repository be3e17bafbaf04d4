"""The digit-level bijection between the real line and the Sierpinski set.

``forward`` writes a nonnegative rational in ternary (trailing 2s for
terminating values), reads the same digits in base 4, and splits every
quaternary digit into a column of two bits. The two bit streams are the
coordinates ``a`` and ``b``. Negative inputs map to the negated point.

Points whose binary coordinates admit two admissible readings (both dyadic,
one stream ending in 1s and the other in 0s) are told apart by a side tag:
``plus`` when ``a`` ends in 1s, ``minus`` when ``b`` does. Every other point is
``neutral``.
"""
from __future__ import annotations

import enum
import re

import numpy as np
from gmpy2 import mpq, mpz

from . import digits as dg
from .errors import ForbiddenPair, InconsistentSide, NotInSet
from .rational import Rational, format_rational, parse_rational, to_rational


class Side(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    NEUTRAL = "0"


class Case(enum.Enum):
    A = "case_A"
    B = "case_B"
    C = "case_C"
    NOT_IN_S = "not_in_S"


class SierpinskiPoint:
    """A point ``(a, b)`` of the double-covered set with its side tag.

    Coordinates may be given as rationals or as radix-2 expansions. They are
    kept as normalized binary expansions, which are canonical, so equality
    and hashing never need the (often enormous) reduced fractions; ``a`` and
    ``b`` are computed on first access. Equality is structural:
    ``(1, 1)+`` and ``(1, 1)-`` are different points.
    """

    __slots__ = ("a_digits", "b_digits", "side", "_values")

    def __init__(self, a, b, side=Side.NEUTRAL):
        self.a_digits = _binary(a)
        self.b_digits = _binary(b)
        self.side = Side(side)
        self._values = None

    def __setattr__(self, name, value):
        if name != "_values" and hasattr(self, "_values"):
            raise AttributeError("SierpinskiPoint is immutable")
        object.__setattr__(self, name, value)

    @property
    def a(self) -> Rational:
        return self._coords()[0]

    @property
    def b(self) -> Rational:
        return self._coords()[1]

    def _coords(self):
        if self._values is None:
            object.__setattr__(self, "_values", (dg.evaluate(self.a_digits), dg.evaluate(self.b_digits)))
        return self._values

    def _key(self):
        return (self.a_digits, self.b_digits, self.side)

    def __eq__(self, other):
        if not isinstance(other, SierpinskiPoint):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __neg__(self):
        return SierpinskiPoint(_negate(self.a_digits), _negate(self.b_digits), self.side)

    def __repr__(self):
        return f"SierpinskiPoint({format_rational(self.a)!r}, {format_rational(self.b)!r}, {self.side})"

    def __str__(self):
        return format_point(self)


def _binary(value) -> dg.PeriodicDigits:
    if isinstance(value, dg.PeriodicDigits):
        if value.radix != 2:
            raise ValueError(f"coordinate expansions must be binary, got radix {value.radix}")
        return dg.normalize(value)
    return dg.expand(to_rational(value), 2)


def _negate(d: dg.PeriodicDigits) -> dg.PeriodicDigits:
    if d.is_zero:
        return d
    return dg.PeriodicDigits(-d.sign, d.radix, d.int_digits, d.pre_frac, d.period)


ORIGIN = SierpinskiPoint(0, 0, Side.NEUTRAL)


def _uniform(block: str, digit: str) -> bool:
    """True when a binary block repeats a single digit."""
    return ("0" if digit == "1" else "1") not in block


def _tag(a: dg.PeriodicDigits, b: dg.PeriodicDigits) -> Side:
    """Side read off the raw (unnormalized) binary tails."""
    a_ones, a_zeros = _uniform(a.period, "1"), _uniform(a.period, "0")
    b_ones, b_zeros = _uniform(b.period, "1"), _uniform(b.period, "0")
    if a_ones and b_zeros:
        return Side.PLUS
    if a_zeros and b_ones:
        return Side.MINUS
    return Side.NEUTRAL


def forward_digits(x) -> tuple[dg.PeriodicDigits, dg.PeriodicDigits]:
    """Raw binary coordinate streams of ``g(|x|)`` (sign carried on both)."""
    ternary = dg.expand(to_rational(x), 3)
    return dg.split_binary(dg.rebase_tag(ternary, 4))


def forward(x) -> SierpinskiPoint:
    """Map a rational to its point of S.

    >>> str(forward(2)), str(forward("5/2"))
    ('(1, 1)+', '(1, 1)-')
    """
    x = to_rational(x)
    if x == 0:
        return ORIGIN
    a_raw, b_raw = forward_digits(x)
    return SierpinskiPoint(a_raw, b_raw, _tag(a_raw, b_raw))


def binary_representations(d: dg.PeriodicDigits) -> list[dg.PeriodicDigits]:
    """All binary expansions of a nonnegative value, given its normalized form.

    Dyadic values have two: the normalized one ending in 1s and the
    terminating one ending in 0s. Zero has only ``(0.(0))``.
    """
    if d.is_zero or d.period != "1":
        return [d]
    width = len(d.int_digits) + len(d.pre_frac)
    text = dg._to_digits(mpz(d.int_digits + d.pre_frac, 2) + 1, 2, width)
    cut = len(text) - len(d.pre_frac)
    return [d, dg.PeriodicDigits(1, 2, text[:cut], text[cut:], "0")]


def _candidates(a: dg.PeriodicDigits, b: dg.PeriodicDigits):
    """Admissible (side, a_repr, b_repr) readings of a nonnegative pair."""
    out = []
    both_zero = a.is_zero and b.is_zero
    for ra in binary_representations(a):
        for rb in binary_representations(b):
            ra2, rb2 = dg.align(ra, rb)
            if _uniform(ra2.period, "0") and _uniform(rb2.period, "0") and not both_zero:
                # two zero tails would mean a ternary expansion ending in 0s
                continue
            if _overlaps(ra2, rb2):
                continue
            out.append((_tag(ra2, rb2), ra2, rb2))
    return out


def _overlaps(a: dg.PeriodicDigits, b: dg.PeriodicDigits) -> bool:
    whole_a = a.int_digits + a.pre_frac + a.period
    whole_b = b.int_digits + b.pre_frac + b.period
    return bool(mpz(whole_a, 2) & mpz(whole_b, 2))


def _unsigned(a: dg.PeriodicDigits, b: dg.PeriodicDigits):
    signs = {d.sign for d in (a, b) if not d.is_zero}
    if len(signs) > 1:
        raise NotInSet("coordinates have opposite signs")
    sign = signs.pop() if signs else 1
    if sign < 0:
        a, b = _negate(a), _negate(b)
    return sign, a, b


def inverse(p: SierpinskiPoint) -> Rational:
    """The rational ``f(p)``, selecting the binary reading named by the side tag."""
    sign, a, b = _unsigned(p.a_digits, p.b_digits)
    if a.is_zero and b.is_zero:
        if p.side is not Side.NEUTRAL:
            raise InconsistentSide(f"origin carries side {p.side.value}")
        return mpq(0)
    candidates = _candidates(a, b)
    if not candidates:
        raise NotInSet(f"no admissible binary pairing for {p}")
    for side, ra, rb in candidates:
        if side is p.side:
            try:
                quaternary = dg.merge_binary(ra, rb)
            except ForbiddenPair as exc:  # pragma: no cover - filtered above
                raise NotInSet(str(exc)) from exc
            value = dg.evaluate(dg.rebase_tag(quaternary, 3))
            return value if sign > 0 else -value
    found = ", ".join(sorted(c[0].value for c in candidates))
    raise InconsistentSide(f"{p} admits side(s) {found}, not {p.side.value}")


def classify_side(a, b) -> Case:
    """Which of the ambiguity cases the pair falls into.

    Over the rationals there are no irrational coordinates, so case A never
    occurs. A pair is case C when its admissible reading carries a side tag.
    """
    try:
        _, a, b = _unsigned(_binary(a), _binary(b))
    except NotInSet:
        return Case.NOT_IN_S
    candidates = _candidates(a, b)
    if not candidates:
        return Case.NOT_IN_S
    if any(side is not Side.NEUTRAL for side, _, _ in candidates):
        return Case.C
    return Case.B


def _prefix_cells(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Binary cell indices of nonnegative ternary integers ``m`` (digitwise split)."""
    m = m.copy()
    cx = np.zeros_like(m)
    cy = np.zeros_like(m)
    bit = 1
    while m.any():
        m, t = np.divmod(m, 3)
        cx += (t == 2) * bit
        cy += (t == 1) * bit
        bit <<= 1
    return cx, cy


def cell_arrays(lo, hi, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Cell indices for every length-``k`` ternary prefix in ``[lo, hi)``.

    Prefix ``m`` stands for the points ``(m/3^k, (m+1)/3^k]`` (trailing-2
    convention); its image lies in the binary cell obtained by splitting the
    ternary digits of ``m``. Negative prefixes use the mirrored cell.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lo, hi = to_rational(lo), to_rational(hi)
    scale = 3**k
    first = int(-((-lo * scale) // 1))
    stop = int(-((-hi * scale) // 1))
    if stop <= first:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    m = np.arange(first, stop, dtype=np.int64)
    neg = m < 0
    # for m < 0 the points are [-(|m|)/3^k, -(|m|-1)/3^k): mirror prefix |m|-1
    base = np.where(neg, -m - 1, m)
    cx, cy = _prefix_cells(base)
    cx = np.where(neg, -cx - 1, cx)
    cy = np.where(neg, -cy - 1, cy)
    return cx, cy


def sample_cells(lo, hi, k: int) -> set[tuple[int, int]]:
    """Dyadic cells of side ``2**-k`` hit by the image of ``[lo, hi)``."""
    cx, cy = cell_arrays(lo, hi, k)
    return set(zip(cx.tolist(), cy.tolist()))


def box_dimension(counts: dict[int, int]) -> dict[int, float]:
    """Per-resolution slope ``log N_k / (k log 2)`` of a box count."""
    return {k: float(np.log2(n) / k) for k, n in counts.items()}


_POINT = re.compile(r"^\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*([+\-0])\s*$")


def format_point(p: SierpinskiPoint) -> str:
    return f"({format_rational(p.a)}, {format_rational(p.b)}){p.side.value}"


def parse_point(text: str) -> SierpinskiPoint:
    m = _POINT.match(text)
    if not m:
        raise ValueError(f"malformed point {text!r}")
    return SierpinskiPoint(parse_rational(m.group(1)), parse_rational(m.group(2)), Side(m.group(3)))


def cells_to_csv(cells, k: int) -> str:
    rows = ["k,cell_x,cell_y"]
    rows += [f"{k},{x},{y}" for x, y in sorted(cells)]
    return "\n".join(rows) + "\n"


def cells_from_csv(text: str) -> tuple[int | None, set[tuple[int, int]]]:
    lines = text.strip("\n").split("\n")
    if lines[0] != "k,cell_x,cell_y":
        raise ValueError("unexpected cell CSV header")
    cells, ks = set(), set()
    for line in lines[1:]:
        k, x, y = (int(v) for v in line.split(","))
        ks.add(k)
        cells.add((x, y))
    if len(ks) > 1:
        raise ValueError("mixed resolutions in one cell file")
    return (ks.pop() if ks else None), cells
