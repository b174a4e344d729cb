from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidorder.series import (Order, Series, VariableOrder, lowest_term, mono_compare, mul,
                               series_compare, unit_inverse)

D = 4
monos = st.lists(st.integers(1, 3), max_size=D).map(tuple)
coeffs = st.integers(-3, 3) | st.fractions(min_value=-4, max_value=4, max_denominator=4)
series = st.dictionaries(monos, coeffs, max_size=6).map(lambda t: Series(D, t))
units = series.map(lambda f: Series(D, {**{m: c for m, c in f.terms.items() if m}, (): 1}))


def test_mono_order_degree_then_lex():
    assert mono_compare((2,), (1, 1)) is Order.LESS
    assert mono_compare((1, 2), (2, 1)) is Order.LESS
    rev = VariableOrder(key=lambda v: -v)
    assert mono_compare((1, 2), (2, 1), rev) is Order.GREATER
    assert mono_compare((), ()) is Order.EQUAL


def test_variable_order_from_comparator():
    vo = VariableOrder(cmp=lambda a, b: (b > a) - (b < a))
    assert vo.compare(1, 2) is Order.GREATER
    assert sorted([1, 3, 2], key=vo.key) == [3, 2, 1]


def test_truncation_drops_high_terms():
    f = Series(2, {(1,): 1, (1, 1, 1): 5})
    assert dict(f.terms) == {(1,): 1}
    assert Series(3, {(1,): Fraction(4, 2)}).terms[(1,)] == 2


def test_product_truncates_to_min_degree():
    f = Series(3, {(): 1, (1,): 1})
    g = Series(2, {(): 1, (2,): 1})
    assert dict(mul(f, g).terms) == {(): 1, (1,): 1, (2,): 1, (1, 2): 1}
    assert mul(f, g).degree == 2


@given(series, series, series)
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f
    assert f - f == Series.zero(D)


@given(units)
def test_unit_inverse(f):
    assert f * unit_inverse(f) == Series.one(D)
    assert unit_inverse(f) * f == Series.one(D)


def test_unit_inverse_requires_constant_one():
    with pytest.raises(ValueError):
        unit_inverse(Series(2, {(): 2}))


def test_series_compare_by_lowest_term():
    one = Series.one(3)
    assert series_compare(one, Series(3, {(): 1, (2,): 1})) is Order.LESS
    # lowest term of g - f is -X_1
    assert series_compare(Series(3, {(1,): 1}), Series(3, {(2,): 1})) is Order.GREATER
    assert lowest_term(Series(3, {(1, 1): 2, (2,): -1})) == ((2,), -1)
    assert lowest_term(Series.zero(3)) is None


@given(series, series, series)
def test_series_order_translation_invariant(f, g, h):
    assert series_compare(f, g) is series_compare(f + h, g + h)
    assert series_compare(f, g) is series_compare(g, f).flip()


def test_format_and_json():
    f = Series(3, {(): 3, (1,): 1, (1, 2): -2, (2,): Fraction(1, 2)})
    assert f.format() == "3 + X_1 + 1/2 X_2 - 2 X_1 X_2"
    assert Series.zero(2).format() == "0"
    assert f.to_json(var_id=int) == {
        "degree": 3,
        "terms": [{"mono": [], "coeff": 3}, {"mono": [1], "coeff": 1},
                  {"mono": [2], "coeff": "1/2"}, {"mono": [1, 2], "coeff": -2}]}


def test_agrees_with_at_common_degree():
    f = Series(2, {(1,): 1})
    g = Series(4, {(1,): 1, (1, 1, 1): 7})
    assert f.agrees_with(g)
    assert f != g
