import math
import random
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import forward_reference, long_division
from sierpcalc import digits as dg
from sierpcalc.errors import InconsistentSide, NotInSet
from sierpcalc.sierpinski import (
    Case,
    Side,
    SierpinskiPoint,
    box_dimension,
    cells_from_csv,
    cells_to_csv,
    classify_side,
    forward,
    forward_digits,
    format_point,
    inverse,
    parse_point,
    sample_cells,
)

rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))
small_rationals = st.builds(Fraction, st.integers(-10**5, 10**5), st.integers(1, 3000))


def pt(a, b, side):
    return SierpinskiPoint(mpq(Fraction(a)), mpq(Fraction(b)), Side(side))


def expected_side(x: Fraction) -> Side:
    """Side from the ternary tail alone: (2)-tail is plus, (1)-tail is minus."""
    period = long_division(abs(x), 3)[3]
    return {"2": Side.PLUS, "1": Side.MINUS}.get(period, Side.NEUTRAL)


# -- forward / inverse examples -------------------------------------------

@pytest.mark.parametrize("x, point", [
    (2, (1, 1, "+")),
    (Fraction(5, 2), (1, 1, "-")),
    (0, (0, 0, "0")),
    (1, (1, 0, "+")),
    (3, (2, 0, "+")),
    (4, (1, 2, "+")),
    (7, (3, 0, "+")),
    (Fraction(1, 3), (Fraction(1, 2), 0, "+")),
])
def test_forward_examples(x, point):
    assert forward(mpq(Fraction(x))) == pt(*point)


@pytest.mark.parametrize("point, x", [
    ((1, 1, "+"), 2),
    ((1, 1, "-"), Fraction(5, 2)),
    ((0, 0, "0"), 0),
])
def test_inverse_examples(point, x):
    assert inverse(pt(*point)) == mpq(Fraction(x))


def test_inverse_half_half_depends_on_side():
    # both admissible pairings exist, so a signed tag picks one and neutral is rejected
    for side in (Side.PLUS, Side.MINUS):
        p = SierpinskiPoint(mpq(1, 2), mpq(1, 2), side)
        assert forward(inverse(p)) == p
    with pytest.raises(InconsistentSide):
        inverse(pt(Fraction(1, 2), Fraction(1, 2), "0"))


def test_inverse_rejects_points_outside_the_set():
    with pytest.raises(NotInSet):
        inverse(pt(Fraction(1, 3), Fraction(1, 3), "0"))


def test_inverse_rejects_tag_on_unambiguous_pair():
    with pytest.raises(InconsistentSide):
        inverse(pt(Fraction(1, 3), 0, "-"))


# -- classify_side --------------------------------------------------------

@pytest.mark.parametrize("a, b, case", [
    (1, 1, Case.C),
    (0, 0, Case.B),
    (Fraction(1, 3), Fraction(1, 3), Case.NOT_IN_S),
    (Fraction(1, 3), 0, Case.B),
    (Fraction(1, 2), Fraction(1, 2), Case.C),
])
def test_classify_side(a, b, case):
    assert classify_side(mpq(Fraction(a)), mpq(Fraction(b))) == case


# -- properties -----------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(rationals)
def test_bijection_round_trip(x):
    assert inverse(forward(mpq(x))) == mpq(x)


@settings(max_examples=200, deadline=None)
@given(st.integers(-50, 50), st.integers(0, 3**8), st.integers(0, 8))
def test_bijection_on_ternary_tails(n, k, m):
    # values with a terminating ternary expansion (plus side after the
    # trailing-2s convention) and their (1)-tail neighbours (minus side)
    for x in (mpq(n) + mpq(k, 3**m), mpq(n) + mpq(k, 3**m) + mpq(1, 2 * 3**m)):
        assert inverse(forward(x)) == x


@settings(max_examples=200, deadline=None)
@given(small_rationals)
def test_forward_matches_reference(x):
    p = forward(mpq(x))
    a, b = forward_reference(x)
    assert (p.a, p.b) == (mpq(a), mpq(b))
    assert p.side == expected_side(x)


@settings(max_examples=300, deadline=None)
@given(rationals)
def test_oddness(x):
    p, q = forward(mpq(x)), forward(mpq(-x))
    assert (q.a, q.b, q.side) == (-p.a, -p.b, p.side)
    assert q == -p


@settings(max_examples=200, deadline=None)
@given(st.builds(Fraction, st.integers(0, 10**6), st.integers(1, 10**6)))
def test_no_forbidden_pair(x):
    a, b = forward_digits(mpq(x))
    a, b = dg.align(a, b)
    bits_a = a.int_digits + a.pre_frac + a.period
    bits_b = b.int_digits + b.pre_frac + b.period
    assert not any(p == q == "1" for p, q in zip(bits_a, bits_b))


def test_case_c_values_are_tagged():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randint(0, 10)
        x = mpq(rng.randint(0, 100)) + mpq(rng.randint(0, 3**m), 3**m)
        if x:
            assert forward(x).side is Side.PLUS
        assert forward(x + mpq(1, 2 * 3**m)).side is Side.MINUS


def test_discontinuity_at_one():
    # approaching 1 from above tends to (0,1); from below to (1,0)
    dists_above, dists_below = [], []
    for n in range(2, 30, 3):
        up, down = forward(1 + mpq(1, 3**n)), forward(1 - mpq(1, 3**n))
        dists_above.append(max(abs(up.a), abs(up.b - 1)))
        dists_below.append(max(abs(down.a - 1), abs(down.b)))
    assert all(x > y for x, y in zip(dists_above, dists_above[1:]))
    assert all(x > y for x, y in zip(dists_below, dists_below[1:]))
    assert dists_above[-1] < 1e-8 and dists_below[-1] < 1e-8


def test_continuity_at_zero():
    for n in (5, 15, 30):
        for s in (1, -1):
            p = forward(s * mpq(1, 3**n))
            assert max(abs(p.a), abs(p.b)) <= mpq(1, 2**n)


# -- cells ----------------------------------------------------------------

def test_sample_cells_k1():
    assert sample_cells(0, 1, 1) == {(0, 0), (0, 1), (1, 0)}


def test_sample_cells_empty_interval():
    assert sample_cells(0, 0, 1) == set()


@pytest.mark.parametrize("k", range(1, 11))
def test_box_count_is_power_of_three(k):
    assert len(sample_cells(0, 1, k)) == 3**k


def test_box_dimension_is_exact():
    counts = {k: len(sample_cells(0, 1, k)) for k in range(1, 9)}
    for slope in box_dimension(counts).values():
        assert slope == pytest.approx(math.log2(3), abs=1e-12)


def test_cells_match_forward_of_prefixes():
    # each ternary prefix m/3^k lands in the cell named by its forward image
    k = 5
    cells = sample_cells(0, 1, k)
    for m in range(3**k):
        x = mpq(m, 3**k) + mpq(1, 2 * 3**(k + 2))
        p = forward(x)
        assert (int(p.a * 2**k), int(p.b * 2**k)) in cells


def test_cells_csv_round_trip():
    cells = sample_cells(0, 1, 4)
    assert cells_from_csv(cells_to_csv(cells, 4)) == (4, cells)


# -- text form ------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(rationals)
def test_point_text_round_trip(x):
    p = forward(mpq(x))
    assert parse_point(format_point(p)) == p


def test_point_text_form():
    assert format_point(forward(mpq(5, 2))) == "(1, 1)-"
    assert parse_point("(1/2, 0)+") == forward(mpq(1, 3))


def test_points_are_immutable_and_hashable():
    p = forward(2)
    with pytest.raises(AttributeError):
        p.side = Side.MINUS
    assert len({p, forward(2), forward(mpq(5, 2))}) == 2
