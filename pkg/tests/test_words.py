import pytest
from hypothesis import given

from braidorder.words import (Generator, GeneratorMap, Word, WordParseError, abelianize, format_word,
                              gens, is_h1_trivial, parse_word, reduce)

from conftest import words

x1, x2, x3 = gens("x", 3)


def test_reduce_cancels_adjacent_inverses():
    assert reduce([(x1, 1), (x2, 1), (x2, -1), (x1, -1)]) == ()
    assert reduce([(x1, 1), (x1, 1)]) == ((x1, 1), (x1, 1))


def test_reduce_rejects_bad_exponent():
    with pytest.raises(ValueError):
        reduce([(x1, 2)])


def test_parse_and_format():
    w = parse_word("x_1^2 x_2^-1 1 x_3")
    assert w.letters == ((x1, 1), (x1, 1), (x2, -1), (x3, 1))
    assert format_word(w) == "x_1^2 x_2^-1 x_3"
    assert format_word(Word.identity()) == "1"
    assert parse_word("x_1 x_1^-1") == Word.identity()


def test_parse_error_reports_position():
    with pytest.raises(WordParseError) as err:
        parse_word("x_1 y_2", "x")
    assert err.value.position == 4
    with pytest.raises(WordParseError):
        parse_word("x_1 ^2")


@given(words())
def test_format_parse_roundtrip(w):
    assert parse_word(format_word(w)) == w


@given(words(), words(), words())
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Word.identity()
    assert a * Word.identity() == a
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(words(), words())
def test_abelianize_is_homomorphism(a, b):
    ab = abelianize(a * b)
    expected = dict(abelianize(a))
    for g, k in abelianize(b).items():
        expected[g] = expected.get(g, 0) + k
    assert ab == {g: k for g, k in expected.items() if k}


def test_power_and_runs():
    w = Word.gen(x1) ** 3 * Word.gen(x2, -2)
    assert w.runs() == [(x1, 3), (x2, -2)]
    assert Word.from_runs(w.runs()) == w
    assert (Word.gen(x1) * Word.gen(x2)) ** -1 == Word([(x2, -1), (x1, -1)])


def test_generator_map_compose_and_h1():
    conj = GeneratorMap({x1: Word.gen(x2) * Word.gen(x1) * Word.gen(x2, -1)})
    shear = GeneratorMap({x2: Word.gen(x1) * Word.gen(x2)})
    assert is_h1_trivial(conj, [x1, x2])
    assert not is_h1_trivial(shear, [x1, x2])
    both = shear.compose(conj)
    assert both(Word.gen(x1)) == Word.gen(x1) * Word.gen(x2) * Word.gen(x1) * Word.gen(x2, -1) * Word.gen(x1, -1)
    assert both == GeneratorMap({x1: both.image(x1), x2: both.image(x2)})


@given(words(), words())
def test_generator_map_is_homomorphism(a, b):
    phi = GeneratorMap({x1: Word.gen(x2) * Word.gen(x3, -1), x3: Word.gen(x1, 2)})
    assert phi(a * b) == phi(a) * phi(b)


def test_generator_str():
    assert str(Generator("w", 3)) == "w_3"
