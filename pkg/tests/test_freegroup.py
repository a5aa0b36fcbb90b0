import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freejoin.errors import AlphabetMismatchError, IdentityWordError, WordSyntaxError
from freejoin.freegroup import (
    IDENTITY,
    INFINITE,
    FiniteCycles,
    Fixed,
    Letter,
    Shift,
    Symbol,
    SymbolBijection,
    Word,
    apply_power,
    invert,
    is_fixed,
    multiply,
    orbit_period,
    parse_word,
    reduce,
)
from oracles import naive_reduce, triples

W = parse_word
SHIFT = SymbolBijection([Shift("s", 1)])
SWAP = SymbolBijection([FiniteCycles("ab", (("a", "b"),))])

letters = st.builds(
    Letter,
    st.sampled_from([Symbol("s", i) for i in range(-2, 3)] + [Symbol("a"), Symbol("b")]),
    st.sampled_from([1, -1]),
)
raw_words = st.lists(letters, max_size=12)
words = raw_words.map(reduce)


def test_parse_and_print():
    w = W("s[0] s[3]^-1 t")
    assert [str(l) for l in w] == ["s[0]", "s[3]^-1", "t"]
    assert str(w) == "s[0] s[3]^-1 t"
    assert W("e") == IDENTITY
    assert str(IDENTITY) == "e"
    assert W("a^3") == W("a a a")
    assert W("a a^-1 b") == W("b")
    assert W("1:s[-2]").letters[0].symbol == Symbol("1:s", -2)


@pytest.mark.parametrize("text, pos", [("s[0", 1), ("s[0] $", 5), ("a^0", 0), ("e[1]", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as info:
        W(text)
    assert info.value.position == pos


def test_multiply_examples():
    assert multiply(W("a b"), W("b^-1")) == W("a")
    assert multiply(W("a b"), W("b^-1 a^-1")) == IDENTITY
    assert W("a") * W("a^-1") == IDENTITY


def test_invert_examples():
    assert invert(W("a b")) == W("b^-1 a^-1")
    assert invert(IDENTITY) == IDENTITY
    assert invert(W("s[3]^-1")) == W("s[3]")


def test_apply_power_examples():
    assert apply_power(SHIFT, 0, W("s[0] s[1]^-1")) == W("s[0] s[1]^-1")
    assert apply_power(SWAP, 1, W("a b^-1")) == W("b a^-1")
    assert apply_power(SHIFT, -3, W("s[1]")) == W("s[-2]")
    with pytest.raises(AlphabetMismatchError):
        apply_power(SHIFT, 1, W("a"))
    with pytest.raises(AlphabetMismatchError):
        apply_power(SHIFT, 0, W("a"))


def test_orbit_period_examples():
    ident = SymbolBijection.identity(bare=["a", "b"])
    assert orbit_period(ident, W("a")) == 1
    assert orbit_period(SWAP, W("a b")) == 2
    assert orbit_period(SWAP, W("a a")) == 2
    assert orbit_period(SHIFT, W("s[0]")) == INFINITE
    assert math.isinf(orbit_period(SHIFT, W("s[0]")))
    with pytest.raises(IdentityWordError):
        orbit_period(SWAP, IDENTITY)


def test_orbit_period_lcm_of_cycles():
    T = SymbolBijection([FiniteCycles("c", (("a", "b"), ("x", "y", "z")))])
    assert orbit_period(T, W("a x")) == 6
    assert orbit_period(T, W("a b")) == 2
    # first return of the word, computed by iteration
    w, n = W("a x"), 1
    while apply_power(T, n, w) != w:
        n += 1
    assert n == 6


def test_is_fixed_examples():
    ident = SymbolBijection.identity(bare=["a", "b"])
    assert is_fixed(ident, W("a b^-1"))
    assert not is_fixed(SHIFT, W("s[0]"))
    mixed = SymbolBijection([Fixed("t"), Shift("s", 1)])
    assert is_fixed(mixed, W("t[1] t[2]^-1"))
    assert not is_fixed(mixed, W("t[1] s[2]"))


def test_bijection_validation():
    with pytest.raises(ValueError):
        SymbolBijection([Shift("s", 0)])
    with pytest.raises(ValueError):
        SymbolBijection([FiniteCycles("c", (("a", "b"), ("b",)))])
    with pytest.raises(ValueError):
        SymbolBijection([Shift("s", 1), Fixed("s")])
    with pytest.raises(ValueError):
        SymbolBijection([Shift("s", 1), Fixed("F", ("s",))])


def test_bijection_queries():
    T = SymbolBijection([Shift("s", 2), Fixed("t"), FiniteCycles("ab", (("a", "b"),))])
    assert T.indexed_families == {"s": 2, "t": 0}
    assert set(T.bare_symbols) == {"a", "b"}
    assert T.image(Symbol("s", 1), 3) == Symbol("s", 7)
    assert T.image(Symbol("a"), 3) == Symbol("b")
    assert T.symbol_period(Symbol("t", 5)) == 1
    assert T.has_finite_orbit()
    assert not SHIFT.has_finite_orbit()
    assert not T.contains(Symbol("a", 0))


@given(raw_words)
def test_reduction_matches_naive_oracle(raw):
    assert triples(reduce(raw)) == naive_reduce([(l.symbol.family, l.symbol.index, l.exponent) for l in raw])


@given(words)
def test_reduced_words_have_no_cancelling_pair(w):
    for x, y in zip(w.letters, w.letters[1:]):
        assert x != y.inverse()


@given(words, words, words)
def test_group_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * IDENTITY == u == IDENTITY * u
    assert u * invert(u) == IDENTITY == invert(u) * u
    assert invert(u * v) == invert(v) * invert(u)


@given(words)
def test_text_round_trip(w):
    assert W(str(w)) == w


@settings(max_examples=50)
@given(st.lists(letters.filter(lambda l: l.symbol.family == "s"), max_size=8).map(reduce), st.integers(-5, 5), st.integers(-5, 5))
def test_apply_power_is_an_action_and_homomorphism(w, m, n):
    assert apply_power(SHIFT, m, apply_power(SHIFT, n, w)) == apply_power(SHIFT, m + n, w)
    assert apply_power(SHIFT, n, w * invert(w)) == IDENTITY
    assert apply_power(SHIFT, n, invert(w)) == invert(apply_power(SHIFT, n, w))
    assert len(apply_power(SHIFT, n, w)) == len(w)


def test_word_gen_and_power():
    s0 = Word.gen("s", 0)
    assert s0 ** 3 == W("s[0] s[0] s[0]")
    assert s0 ** -2 == W("s[0]^-1 s[0]^-1")
    assert s0 ** 0 == IDENTITY
    assert ~s0 == W("s[0]^-1")
