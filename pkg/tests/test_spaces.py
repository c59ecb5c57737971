import itertools
import math

import pytest
from hypothesis import given, strategies as st

from shiftdrift.errors import InputError, ResourceError
from shiftdrift.gallery import fixed_point_space, full_shift, period_two_orbit, sunny_side_up
from shiftdrift.spaces import (
    EnumerationCap,
    ProductShift,
    SoficShift,
    complexity_report,
    entropy_estimate,
    infinite_shift_guard,
    is_point_in,
    words,
    zero_entropy_certificate,
)
from shiftdrift.symbolic import Alphabet, Point, parse_point, shift_point


def at_most_one_one(n):
    """Brute-force oracle for the language of S."""
    return sorted(w for w in itertools.product("01", repeat=n) if w.count("1") <= 1)


def test_sunny_words_match_brute_force(sunny):
    s, _ = sunny
    for n in range(0, 12):
        assert words(s, n) == at_most_one_one(n)


def test_sunny_contains_zero_point(sunny):
    s, _ = sunny
    assert is_point_in(s, Point.constant("0"))
    assert is_point_in(s, parse_point("|0^omega <1@7> |0^omega"))
    assert not is_point_in(s, parse_point("|0^omega <101@0> |0^omega"))


def test_full_shift_counts():
    assert [len(words(full_shift(), n)) for n in range(1, 6)] == [2, 4, 8, 16, 32]


def test_fixed_point_counts():
    f = fixed_point_space()
    assert complexity_report(f, 6).counts == {n: 1 for n in range(1, 7)}


def test_period_two_orbit():
    p = period_two_orbit()
    assert words(p, 3) == [("0", "1", "0"), ("1", "0", "1")]
    assert p.is_finite()
    assert not infinite_shift_guard(p).passed


def test_entropy_of_sunny_at_thirty(sunny):
    s, _ = sunny
    assert entropy_estimate(s, 30) == pytest.approx(math.log(31) / 30, abs=1e-15)
    cert = zero_entropy_certificate(s, 30, 0.12)
    assert cert.passed and cert.estimate <= 0.12


def test_full_shift_refused():
    cert = zero_entropy_certificate(full_shift(), 10, 0.12)
    assert not cert.passed
    assert abs(cert.estimate - math.log(2)) < 1e-9


def test_cap_is_enforced(sunny):
    s, _ = sunny
    with pytest.raises(ResourceError):
        s.words(10, EnumerationCap(max_length=5))
    with pytest.raises(ResourceError):
        full_shift().words(12, EnumerationCap(max_words=100))


def test_product_language_is_product_of_languages(sunny):
    s, _ = sunny
    p = period_two_orbit()
    prod = ProductShift((p, s))
    for n in range(0, 5):
        expected = sorted(tuple(zip(a, b)) for a in words(p, n) for b in words(s, n))
        assert sorted(words(prod, n)) == expected
        assert prod.count_words(n) == len(expected)


def test_realize_places_word(sunny):
    s, _ = sunny
    for w in words(s, 5):
        q = s.realize(w, -2)
        assert is_point_in(s, q)
        assert tuple(q[i] for i in range(-2, 3)) == w


def test_sofic_prunes_stranded_states():
    a = Alphabet(("0", "1"))
    g = SoficShift(a, (("p", "0", "p"), ("p", "1", "q")))
    assert g.states == ("p",)
    with pytest.raises(InputError):
        SoficShift(a, (("p", "1", "q"),))


def test_golden_mean_shift():
    a = Alphabet(("0", "1"))
    g = SoficShift(a, (("p", "0", "p"), ("p", "1", "q"), ("q", "0", "p")))
    fib = [1, 2, 3, 5, 8, 13, 21, 34]
    assert [g.count_words(n) for n in range(8)] == fib
    assert g.exact_entropy() == pytest.approx(math.log((1 + 5 ** 0.5) / 2))
    assert g.contains_point(Point.periodic(("1", "0")))
    assert not g.contains_point(Point.periodic(("1", "1", "0")))


graphs = st.lists(
    st.tuples(st.sampled_from("pqr"), st.sampled_from("01"), st.sampled_from("pqr")),
    min_size=1, max_size=7,
)


@given(graphs)
def test_sofic_counting_matches_listing_and_paths(edges):
    a = Alphabet(("0", "1"))
    try:
        g = SoficShift(a, tuple(edges))
    except InputError:
        return
    for n in range(0, 6):
        listed = words(g, n)
        assert g.count_words(n) == len(listed)
        # oracle: labels of length-n paths that sit inside a bi-infinite path
        paths = set()
        live = set(g.states)
        for seq in itertools.product(g.edges, repeat=n):
            if all(seq[i][2] == seq[i + 1][0] for i in range(n - 1)):
                if not seq or seq[0][0] in live:
                    paths.add(tuple(e[1] for e in seq))
        assert set(listed) == paths


def test_sample_points_realize_every_word(sunny):
    s, _ = sunny
    for r in range(0, 4):
        seen = {tuple(p[i] for i in range(-r, r + 1)) for p in s.sample_points(r)}
        assert seen == set(words(s, 2 * r + 1))
        assert all(is_point_in(s, p) for p in s.sample_points(r))


def test_shifted_marker_is_in_sunny(sunny):
    s, _ = sunny
    m = parse_point("|0^omega <1@0> |0^omega")
    assert all(is_point_in(s, shift_point(m, k)) for k in range(-5, 6))
