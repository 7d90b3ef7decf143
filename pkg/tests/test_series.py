from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadwalks.series import (
    TruncatedSeries,
    TruncationError,
    add,
    coeff,
    from_json,
    mul,
    section,
    swap_xy,
    to_json,
    to_text,
)


def S(order, terms):
    return TruncatedSeries.from_terms(order, terms)


@st.composite
def series(draw, order=None):
    n = draw(st.integers(0, 6)) if order is None else order
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, n)),
            st.integers(-5, 5),
            max_size=8,
        )
    )
    return S(n, terms)


@st.composite
def same_order(draw, k):
    n = draw(st.integers(0, 6))
    return [draw(series(order=n)) for _ in range(k)]


def test_add_cancellation():
    a = S(3, {(0, 0, 0): 1, (1, 1, 1): 1})
    b = S(3, {(1, 1, 1): -1})
    assert add(a, b) == TruncatedSeries.one(3)


def test_add_zero_identity():
    a = S(4, {(0, 2, 1): 3, (1, 0, 4): -2})
    assert a + TruncatedSeries.zero(4) == a


def test_add_takes_min_order():
    assert add(TruncatedSeries.one(2), TruncatedSeries.one(5)).order == 2


def test_mul_difference_of_squares():
    a = S(2, {(0, 0, 0): 1, (1, 1, 1): 1})
    b = S(2, {(0, 0, 0): 1, (1, 1, 1): -1})
    assert mul(a, b) == S(2, {(0, 0, 0): 1, (2, 2, 2): -1})


def test_mul_unit():
    a = S(3, {(1, 1, 0): 1, (0, 0, 1): -1})
    assert a * TruncatedSeries.one(3) == a


def test_mul_geometric_telescopes():
    N = 7
    one_minus = S(N, {(0, 0, 0): 1, (1, 1, 1): -1})
    geo = S(N, {(n, n, n): 1 for n in range(N + 1)})
    assert one_minus * geo == TruncatedSeries.one(N)


def test_mul_never_truncates_xy():
    a = S(1, {(5, 0, 0): 1})
    assert coeff(a * a, 10, 0, 0) == 1


def test_coeff():
    a = S(1, {(0, 0, 0): 1, (1, 1, 1): 1})
    assert coeff(a, 1, 1, 1) == 1
    assert coeff(a, 0, 1, 1) == 0
    with pytest.raises(TruncationError):
        coeff(a, 0, 0, 2)


def test_sections():
    a = S(1, {(0, 0, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    assert section(a, "x=0") == S(1, {(0, 0, 0): 1, (0, 1, 1): 1})
    assert section(a, "y=0") == S(1, {(0, 0, 0): 1, (1, 0, 1): 1})
    assert section(a, "x=y=0") == TruncatedSeries.one(1)
    assert section(a, "x=y=1") == S(1, {(0, 0, 0): 1, (0, 0, 1): 2})
    with pytest.raises(ValueError):
        section(a, "z=0")


def test_swap_xy_example():
    assert swap_xy(S(1, {(2, 1, 1): 1})) == S(1, {(1, 2, 1): 1})


def test_no_stored_zeros_and_lowest_terms():
    a = S(1, {(1, 0, 0): Fraction(4, 2), (0, 1, 0): 0, (0, 0, 1): Fraction(-3, 6)})
    assert dict(a.slices[0]) == {(1, 0): 2}
    assert isinstance(a.slices[0][(1, 0)], int)
    assert a.slices[1][(0, 0)] == Fraction(-1, 2)
    assert a.slices[1][(0, 0)].denominator > 0


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        S(0, {(-1, 0, 0): 1})


def test_text_form_canonical_order():
    a = S(2, {(0, 2, 1): 1, (1, 0, 1): 2, (0, 0, 0): 1, (1, 1, 1): Fraction(1, 2)})
    assert to_text(a) == "1 * x^0 y^0 t^0 + 2 * x^1 y^0 t^1 + 1 * x^0 y^2 t^1 + 1/2 * x^1 y^1 t^1"


def test_json_big_numbers_survive():
    big = 3**200
    a = S(1, {(0, 0, 1): big, (1, 0, 0): Fraction(1, big)})
    data = to_json(a)
    assert all(isinstance(t["num"], str) for t in data["terms"])
    assert from_json(data) == a


@given(same_order(3))
@settings(max_examples=60, deadline=None)
def test_ring_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(series(), series())
@settings(max_examples=60, deadline=None)
def test_add_is_coefficientwise(a, b):
    s = add(a, b)
    assert s.order == min(a.order, b.order)
    for i in range(4):
        for j in range(4):
            for n in range(s.order + 1):
                assert coeff(s, i, j, n) == coeff(a, i, j, n) + coeff(b, i, j, n)


@given(series())
@settings(max_examples=60, deadline=None)
def test_swap_is_involution(a):
    assert swap_xy(swap_xy(a)) == a


@given(same_order(2))
@settings(max_examples=60, deadline=None)
def test_swap_commutes_with_mul(ab):
    a, b = ab
    assert swap_xy(a * b) == swap_xy(a) * swap_xy(b)


@given(same_order(2))
@settings(max_examples=40, deadline=None)
def test_results_hold_no_zeros(ab):
    a, b = ab
    for r in (a + b, a * b, a - a):
        assert all(c != 0 for s in r.slices for c in s.values())


@given(series())
@settings(max_examples=40, deadline=None)
def test_json_roundtrip(a):
    assert from_json(to_json(a)) == a
