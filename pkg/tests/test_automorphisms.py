import itertools

import pytest
from hypothesis import given, strategies as st

from shiftdrift.automorphisms import (
    BlockMap,
    apply_block_map_word,
    apply_to_point,
    compose,
    identity,
    memory_bound,
    power,
    shift_map,
    swap,
    symbol_permutation,
    verify_automorphism,
)
from shiftdrift.errors import InputError
from shiftdrift.gallery import full_shift
from shiftdrift.symbolic import Alphabet, Point, parse_point, shift_point

BIN = Alphabet(("0", "1"))


def test_shift_is_sigma_convention():
    x = parse_point("|0^omega <1@0> |0^omega")
    assert apply_to_point(shift_map(1, BIN), x) == shift_point(x, 1)
    assert apply_to_point(shift_map(1, BIN), x)[1] == "1"


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_shift_powers_compose(a, b):
    x = parse_point("1|10^omega <0110@-2> |011^omega")
    ab = compose(shift_map(a, BIN), shift_map(b, BIN))
    assert apply_to_point(ab, x) == shift_point(x, a + b)
    assert memory_bound(ab) == (abs(a) + abs(b), abs(a) + abs(b))


def test_compose_memory():
    s = shift_map(1, BIN)
    assert memory_bound(compose(s, s)) == (2, 2)


def test_sigma_verifies_on_sunny(sunny):
    s, _ = sunny
    assert verify_automorphism(s, shift_map(1, BIN), 9).passed


def test_bit_flip_fails_on_sunny(sunny):
    s, _ = sunny
    flip = symbol_permutation({"0": "1", "1": "0"}, BIN)
    report = verify_automorphism(s, flip, 3)
    assert not report.passed
    assert not report.checks["forward language"]
    # 00 maps to 11, which has two ones
    assert any(word == ("0", "0") for _, word, _ in report.failures)
    assert "FAIL" in report.render()


def test_bit_flip_is_fine_on_full_shift():
    flip = symbol_permutation({"0": "1", "1": "0"}, BIN)
    assert verify_automorphism(full_shift(), flip, 5).passed


def test_wrong_inverse_is_caught():
    s = shift_map(1, BIN)
    from shiftdrift.automorphisms import Automorphism

    bogus = Automorphism(s.forward, s.forward, "bogus")
    report = verify_automorphism(full_shift(), bogus, 5)
    assert not report.checks["inverse after forward"]


def test_verification_length_must_cover_both_memories():
    with pytest.raises(InputError):
        verify_automorphism(full_shift(), shift_map(2, BIN), 8)


def test_table_must_be_total():
    with pytest.raises(InputError):
        BlockMap.from_table(0, {("0",): "1"}, BIN)


def test_extensional_equality_across_memories():
    a = BlockMap(0, lambda w: w[0], BIN)
    b = BlockMap(2, lambda w: w[2], BIN)
    assert a == b
    assert a != BlockMap(1, lambda w: w[0], BIN)


def test_word_application():
    xor = BlockMap(1, lambda w: "1" if w[0] != w[2] else "0", BIN)
    assert apply_block_map_word(xor, tuple("00100")) == tuple("101")
    with pytest.raises(InputError):
        apply_block_map_word(xor, ("0",))


def test_swap_needs_symmetric_product():
    with pytest.raises(InputError):
        swap(BIN)
    pair = Alphabet.product(BIN, BIN)
    sw = swap(pair)
    assert sw.forward((("0", "1"),)) == ("1", "0")


def test_power_and_inverse():
    s = shift_map(1, BIN)
    x = parse_point("|0^omega <1@0> |0^omega")
    assert apply_to_point(power(s, -3), x) == shift_point(x, -3)
    assert apply_to_point(s.inverted(), x) == shift_point(x, -1)
    assert apply_to_point(power(s, 0), x) == x


@given(st.lists(st.sampled_from("01"), min_size=9, max_size=14))
def test_composition_on_words_is_sequential(word):
    xor = BlockMap(1, lambda w: "1" if w[0] != w[2] else "0", BIN)
    maj = BlockMap(1, lambda w: "1" if w.count("1") >= 2 else "0", BIN)
    from shiftdrift.automorphisms import compose_block_maps

    both = compose_block_maps(xor, maj)
    w = tuple(word)
    assert apply_block_map_word(both, w) == apply_block_map_word(xor, apply_block_map_word(maj, w))
