"""Exact eventually-periodic positional expansions of rationals.

An expansion is stored as three digit strings (integer part, pre-period,
repeating block) over the alphabet ``0-9a-z``. Strings rather than lists keep
periods of several hundred thousand digits cheap to build, translate and
compare; the heavy lifting (period digits, evaluation) is done on big
integers through gmpy2.

Normalization follows the convention used throughout the package: a nonzero
value with a terminating expansion is written with a trailing repeating block
of ``radix - 1`` (so ``1 = (0.(2))_3``). Zero is the one exception and is
written ``(0.(0))``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from gmpy2 import divexact, mpq, mpz

from .errors import DigitOutOfRange, ExpansionTooLong, ForbiddenPair
from .rational import Rational, to_rational

ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"

_ALLOWED = {r: ALPHABET[:r].encode() for r in range(2, len(ALPHABET) + 1)}

_NONZERO = re.compile("[^0]")

_SMALL_MODULUS_BITS = 64
_SCAN_STEPS = 4096

# longest repeating block expand() will materialise
MAX_PERIOD = 10_000_000


@dataclass(frozen=True)
class PeriodicDigits:
    """Signed expansion ``int_digits . pre_frac (period)`` in ``radix``.

    Digits are characters of :data:`ALPHABET`, most significant first.
    Instances built by :func:`expand` are normalized; :func:`split_binary`
    and :func:`align` deliberately return unnormalized forms.
    """

    sign: int
    radix: int
    int_digits: str
    pre_frac: str
    period: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not 2 <= self.radix <= len(ALPHABET):
            raise ValueError(f"unsupported radix {self.radix}")
        if not self.int_digits or not self.period:
            raise ValueError("int_digits and period must be nonempty")
        allowed = _ALLOWED[self.radix]
        for part in (self.int_digits, self.pre_frac, self.period):
            if part.encode("ascii", "replace").translate(None, allowed):
                raise DigitOutOfRange(f"digit outside radix {self.radix} in {part!r}")

    @property
    def is_zero(self) -> bool:
        return not any(_NONZERO.search(p) for p in (self.int_digits, self.pre_frac, self.period))

    def __str__(self):
        return format_digits(self)


def zero(radix: int) -> PeriodicDigits:
    return PeriodicDigits(1, radix, "0", "", "0")


def _to_digits(n, radix: int, width: int = 0) -> str:
    """Digits of the nonnegative integer ``n`` zero-padded to ``width``."""
    s = mpz(n).digits(radix) if n else "0"
    if width:
        if n == 0:
            return "0" * width
        return s.zfill(width)
    return s


def multiplicative_order(base: int, modulus) -> int:
    """Smallest ``k >= 1`` with ``base**k == 1 (mod modulus)``.

    Small moduli go through sympy's factorisation-based routine. Large moduli
    arising from binary expansions are usually of the form ``base**L - 1`` up
    to small factors, whose order sits just past ``log_base(modulus)``; a short
    scan from there catches those before falling back to factorisation.
    """
    modulus = mpz(modulus)
    if modulus == 1:
        return 1
    if math.gcd(int(base), int(modulus % base)) != 1:
        raise ValueError(f"{base} is not invertible modulo {modulus}")
    from sympy.ntheory import n_order

    if modulus.bit_length() <= _SMALL_MODULUS_BITS:
        return int(n_order(base, int(modulus)))
    # least k with base**k > modulus
    k = max(1, int((modulus.bit_length() - 1) / math.log2(base)))
    power = mpz(base) ** k
    while power <= modulus:
        power *= base
        k += 1
    r = power % modulus
    for _ in range(_SCAN_STEPS):
        if r == 1:
            return k
        r = r * base % modulus
        k += 1
    return int(n_order(base, int(modulus)))


def expand(x, radix: int) -> PeriodicDigits:
    """Normalized expansion of the rational ``x`` in ``radix``.

    >>> str(expand(1, 3))
    '(0.(2))_3'
    >>> str(expand(4, 3))
    '(10.(2))_3'
    """
    if radix < 2:
        raise ValueError(f"radix must be >= 2, got {radix}")
    x = to_rational(x)
    if x == 0:
        return zero(radix)
    sign = 1 if x > 0 else -1
    x = abs(x)
    num, den = mpz(x.numerator), mpz(x.denominator)
    s, q2 = _preperiod(den, radix)
    scale = mpz(radix) ** s
    whole, rem = divmod(num * scale, den)
    # rem / den = r / q2 after cancelling the radix-smooth part
    r = rem * q2 // den
    if r == 0:
        # terminating: borrow one unit in the last place, repeat radix-1
        whole -= 1
        int_part, pre = divmod(whole, scale)
        return _raw(
            sign, radix, _to_digits(int_part, radix), _to_digits(pre, radix, s) if s else "",
            ALPHABET[radix - 1],
        )
    period_len = multiplicative_order(radix, q2)
    if period_len > MAX_PERIOD:
        raise ExpansionTooLong(
            f"period of {x} in radix {radix} has {period_len} digits (limit {MAX_PERIOD})"
        )
    block = r * divexact(mpz(radix) ** period_len - 1, q2)
    int_part, pre = divmod(whole, scale)
    return _raw(
        sign, radix, _to_digits(int_part, radix), _to_digits(pre, radix, s) if s else "",
        _to_digits(block, radix, period_len),
    )


def _preperiod(den, radix: int):
    """Split ``den`` into the pre-period length and its radix-coprime part."""
    s = 0
    q2 = mpz(den)
    # den divides radix**s * q2; find the least s
    smooth = mpz(1)
    g = math.gcd(int(q2 % radix), radix) if q2 > 0 else 1
    while g > 1:
        q2 //= g
        smooth *= g
        g = math.gcd(int(q2 % radix), radix)
    while (mpz(radix) ** s) % smooth:
        s += 1
    return s, q2


def normalize(d: PeriodicDigits) -> PeriodicDigits:
    """Canonical form of any expansion, equal to ``expand(evaluate(d), radix)``.

    Works on the digit strings alone (minimal block by self-overlap search,
    pre-period rolled back into the block, 0-tail rewritten as a
    ``radix - 1`` tail), so it never forms the rational value.
    """
    if d.is_zero:
        return zero(d.radix)
    period = _minimal_block(d.period)
    pre = d.pre_frac
    if _uniform_block(period, "0"):
        # terminating: subtract one unit in the last place, tail becomes radix-1
        width = len(pre)
        head = mpz(d.int_digits + pre, d.radix) - 1
        text = _to_digits(head, d.radix, len(d.int_digits) + width)
        int_digits, pre = text[: len(text) - width], text[len(text) - width:]
        period = ALPHABET[d.radix - 1]
    else:
        int_digits = d.int_digits
    L = len(period)
    k = 0
    while k < len(pre) and pre[-1 - k] == period[-1 - (k % L)]:
        k += 1
    if k:
        pre = pre[: len(pre) - k]
        r = k % L
        period = period[L - r:] + period[: L - r] if r else period
    return _raw(d.sign, d.radix, int_digits.lstrip("0") or "0", pre, period)


def _minimal_block(block: str) -> str:
    """Shortest repeating unit of ``block`` (its length divides ``len(block)``)."""
    m = len(block)
    if m == 1:
        return block
    from sympy import primefactors

    for p in primefactors(m):
        while m % p == 0 and block[: m - m // p] == block[m // p : m]:
            m //= p
    return block[:m]


def _uniform_block(block: str, digit: str) -> bool:
    return re.search(f"[^{digit}]", block) is None


def _raw(sign, radix, int_digits, pre_frac, period) -> PeriodicDigits:
    """Build an expansion from digit strings already known to be valid."""
    d = object.__new__(PeriodicDigits)
    object.__setattr__(d, "sign", sign)
    object.__setattr__(d, "radix", radix)
    object.__setattr__(d, "int_digits", int_digits)
    object.__setattr__(d, "pre_frac", pre_frac)
    object.__setattr__(d, "period", period)
    return d


def evaluate(d: PeriodicDigits) -> Rational:
    """Exact value of an expansion, summing the repeating block as a geometric series."""
    b = mpz(d.radix)
    s, L = len(d.pre_frac), len(d.period)
    head = mpz(d.int_digits + d.pre_frac, d.radix)
    block = mpz(d.period, d.radix)
    repunit = b**L - 1
    value = mpq(head * repunit + block, b**s * repunit)
    return value if d.sign > 0 else -value


def rebase_tag(d: PeriodicDigits, radix: int = 4) -> PeriodicDigits:
    """Keep the digit strings, change the radix (and so the value)."""
    allowed = _ALLOWED[radix]
    if any(p.encode().translate(None, allowed) for p in (d.int_digits, d.pre_frac, d.period)):
        raise DigitOutOfRange(f"{d} has a digit >= {radix}")
    return _raw(d.sign, radix, d.int_digits, d.pre_frac, d.period)


_HIGH_BIT = str.maketrans("0123", "0011")
_LOW_BIT = str.maketrans("0123", "0101")


def split_binary(d: PeriodicDigits) -> tuple[PeriodicDigits, PeriodicDigits]:
    """Write each quaternary digit 0, 1, 2 as a column pair (0,0), (0,1), (1,0).

    The two results share the input's shape and are not renormalized, so a
    trailing ``(1)`` / ``(0)`` pattern survives for side determination.
    """
    if d.radix != 4:
        raise ValueError(f"split_binary needs radix 4, got {d.radix}")
    if "3" in d.int_digits or "3" in d.pre_frac or "3" in d.period:
        raise DigitOutOfRange(f"{d} contains the digit 3")
    parts = (d.int_digits, d.pre_frac, d.period)
    hi = [p.translate(_HIGH_BIT) for p in parts]
    lo = [p.translate(_LOW_BIT) for p in parts]
    return _raw(d.sign, 2, *hi), _raw(d.sign, 2, *lo)


def merge_binary(a: PeriodicDigits, b: PeriodicDigits) -> PeriodicDigits:
    """Inverse of :func:`split_binary`: digit ``2*a_j + b_j`` per position.

    Inputs are aligned first. Raises :class:`ForbiddenPair` when some
    position carries (1, 1).
    """
    if a.radix != 2 or b.radix != 2:
        raise ValueError("merge_binary needs two radix-2 expansions")
    sign = _common_sign(a, b)
    a, b = align(a, b)
    parts = []
    for pa, pb in ((a.int_digits, b.int_digits), (a.pre_frac, b.pre_frac), (a.period, b.period)):
        if not pa:
            parts.append("")
            continue
        ia, ib = mpz(pa, 2), mpz(pb, 2)
        if ia & ib:
            raise ForbiddenPair(f"aligned expansions {a} and {b} share a (1, 1) position")
        # reading the bit strings in base 4 places each bit in its own quaternary digit
        parts.append(_to_digits(2 * mpz(pa, 4) + mpz(pb, 4), 4, len(pa)))
    return _raw(sign, 4, *parts)


def _common_sign(a: PeriodicDigits, b: PeriodicDigits) -> int:
    if a.is_zero:
        return b.sign
    if b.is_zero or a.sign == b.sign:
        return a.sign
    raise ValueError(f"expansions {a} and {b} have opposite signs")


def _unroll(d: PeriodicDigits, n_int: int, n_pre: int, n_period: int) -> PeriodicDigits:
    extra = n_pre - len(d.pre_frac)
    L = len(d.period)
    reps = extra // L + 2
    stream = d.period * reps
    pre = d.pre_frac + stream[:extra]
    shift = extra % L
    block = d.period[shift:] + d.period[:shift]
    return _raw(d.sign, d.radix, d.int_digits.zfill(n_int), pre, block * (n_period // L))


def align(d1: PeriodicDigits, d2: PeriodicDigits) -> tuple[PeriodicDigits, PeriodicDigits]:
    """Bring two expansions to a common shape without changing their values.

    Integer parts are zero-padded to equal length, the shorter pre-period is
    extended by unrolling its block, and both blocks are repeated up to the
    lcm of the two period lengths.
    """
    if d1.radix != d2.radix:
        raise ValueError("cannot align expansions in different radices")
    n_int = max(len(d1.int_digits), len(d2.int_digits))
    n_pre = max(len(d1.pre_frac), len(d2.pre_frac))
    n_period = math.lcm(len(d1.period), len(d2.period))
    return _unroll(d1, n_int, n_pre, n_period), _unroll(d2, n_int, n_pre, n_period)


def truncate(d: PeriodicDigits, n: int) -> Rational:
    """Value of ``d`` cut after ``n`` fractional digits."""
    if n < 0:
        raise ValueError("n must be >= 0")
    frac = d.pre_frac[:n]
    if len(frac) < n:
        need = n - len(frac)
        frac += (d.period * (need // len(d.period) + 1))[:need]
    value = mpq(mpz(d.int_digits + frac, d.radix), mpz(d.radix) ** n)
    return value if d.sign > 0 else -value


_PATTERN = re.compile(r"^\s*(-?)\(([0-9a-z]+)\.([0-9a-z]*)\(([0-9a-z]+)\)\)_(\d+)\s*$")


def format_digits(d: PeriodicDigits) -> str:
    """Debug form such as ``-(10.2(01))_3``."""
    sign = "-" if d.sign < 0 else ""
    return f"{sign}({d.int_digits}.{d.pre_frac}({d.period}))_{d.radix}"


def parse_digits(text: str) -> PeriodicDigits:
    m = _PATTERN.match(text)
    if not m:
        raise ValueError(f"malformed expansion {text!r}")
    sign, int_digits, pre, period, radix = m.groups()
    return PeriodicDigits(-1 if sign else 1, int(radix), int_digits, pre, period)
