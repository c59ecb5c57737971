from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from shiftdrift.asymptotic import CalibratedPair, act, locality_radius
from shiftdrift.automorphisms import shift_map
from shiftdrift.errors import InputError, ResourceError
from shiftdrift.gallery import BINARY, MARKER, ZERO, gallery_automorphisms, marker_at
from shiftdrift.measure import (
    Cylinder,
    EmpiricalMeasure,
    WordPair,
    empirical_measure,
    explicit_family,
    half_cylinder,
    invariance_defect,
    project,
    representatives,
    search_calibrated_projections,
    select_window_sequence,
    unique_extension_fraction,
    validate_family,
    word_pairs,
)
from shiftdrift.drift import defect_budget
from shiftdrift.symbolic import parse_point


def hand_s_pairs(n):
    """Radius-n projections of calibrated pairs in S, written out by hand."""
    marker = tuple("0" * n + "1" + "0" * n)
    zeros = tuple("0" * (2 * n + 1))
    out = {(marker, zeros), (zeros, marker)}
    for i in range(1, n + 1):
        shifted = tuple("0" * (n + i) + "1" + "0" * (n - i))
        out |= {(marker, shifted), (shifted, marker)}
    return out


@pytest.mark.parametrize("n", range(0, 7))
def test_sunny_word_pairs_match_hand_list(sunny, n):
    _, fam = sunny
    got = {(w.w1, w.w2) for w in word_pairs(fam, n)}
    assert got == hand_s_pairs(n)
    assert len(got) == 2 * n + 2
    assert got == search_calibrated_projections(fam.space, n)


def test_word_pairs_are_sorted_and_distinct(s_squared):
    _, fam = s_squared
    arr = word_pairs(fam, 3).array
    keys = [bytes(r.tobytes()) for r in arr]
    assert keys == sorted(set(keys))


def test_s_squared_counts(s_squared):
    _, fam = s_squared
    assert [fam.count(n) for n in range(4)] == [12, 64, 180, 384]
    assert [len(word_pairs(fam, n)) for n in range(4)] == [12, 64, 180, 384]


@pytest.mark.parametrize("which", ["sunny", "s_squared", "p_times_s"])
@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_gallery_families_validate(request, which, n):
    _, fam = request.getfixturevalue(which)
    check = validate_family(fam, n)
    assert check.passed, (check.missing[:3], check.spurious[:3])


@pytest.mark.parametrize("which", ["sunny", "s_squared", "p_times_s"])
def test_representatives_are_a_section(request, which):
    _, fam = request.getfixturevalue(which)
    for n in (0, 1, 3, 6, 12):
        if which == "s_squared" and n > 6:
            continue
        reps = representatives(fam, n)
        pairs = list(word_pairs(fam, n))
        assert [project(p, n) for p in reps] == pairs
        for p in reps[:40]:
            assert fam.space.contains_point(p.x) and fam.space.contains_point(p.y)


def naive_unique_fraction(fam, n, m):
    inner = Counter(w.restrict(n) for w in word_pairs(fam, n + m))
    small = list(word_pairs(fam, n))
    return Fraction(sum(1 for w in small if inner[w] == 1), len(small))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 1), (5, 3), (0, 2)])
def test_unique_extension_against_naive(sunny, s_squared, n, m):
    for _, fam in (sunny, s_squared):
        assert unique_extension_fraction(fam, n, m) == naive_unique_fraction(fam, n, m)


def test_sunny_unique_extension_value(sunny):
    # only the zero-word pairs fork: (M, Z) extends to (M, Z) and (M, M_{n+1}), ...
    _, fam = sunny
    assert unique_extension_fraction(fam, 5, 3) == Fraction(5, 6)
    assert unique_extension_fraction(fam, 5, 0) == 1


def test_select_window_ties_go_to_smallest(sunny):
    _, fam = sunny
    choice = select_window_sequence(fam, 1, 10)
    ratios = {n: Fraction(fam.count(n + 1), fam.count(n)) for n in range(1, 11)}
    best = min(ratios.values())
    assert choice.ratio == best
    assert choice.radius == min(n for n, r in ratios.items() if r == best)


def test_select_window_cap(sunny):
    _, fam = sunny
    with pytest.raises(ResourceError):
        select_window_sequence(fam, 5, 60)
    with pytest.raises(InputError):
        select_window_sequence(fam, 1, 0)


def test_empirical_measure_is_normalised(s_squared):
    _, fam = s_squared
    nu = empirical_measure(fam, 1, 4)
    assert nu.total_mass == 1
    assert len(nu.support) == fam.count(nu.radius)
    assert nu.mass(lambda p: True) == 1


def test_empirical_measure_needs_injective_support():
    with pytest.raises(InputError):
        EmpiricalMeasure(1, 0, (CalibratedPair(MARKER, ZERO), CalibratedPair(MARKER, marker_at(3))))
    with pytest.raises(InputError):
        EmpiricalMeasure(1, 0, ())


def test_half_cylinder(sunny):
    _, fam = sunny
    e = half_cylinder(fam, 2)
    assert len(e.accepted) == 3
    with pytest.raises(InputError):
        Cylinder(1, [WordPair(("0",), ("1",), 0)])


def test_invariance_defect_of_shift_is_zero_on_sunny(sunny):
    _, fam = sunny
    nu = empirical_measure(fam, 1, 10)
    e = half_cylinder(fam, 2)
    for k in (1, -1, 2):
        assert invariance_defect(nu, shift_map(k, BINARY), e) == 0


@given(st.sampled_from(sorted(gallery_automorphisms("SxS"))), st.integers(1, 2))
def test_invariance_defect_within_budget(label, m):
    from shiftdrift.gallery import s_squared

    _, fam = s_squared()
    a = gallery_automorphisms("SxS")[label]
    nu = empirical_measure(fam, m, 5)
    e = half_cylinder(fam, 1)
    assert 0 <= invariance_defect(nu, a, e) <= defect_budget(nu, a)


def test_invariance_defect_matches_direct_action(s_squared):
    _, fam = s_squared
    nu = empirical_measure(fam, 1, 6)
    e = half_cylinder(fam, 1)
    for a in gallery_automorphisms("SxS").values():
        if locality_radius(a) > nu.radius - e.radius:
            continue
        before = sum(1 for p in nu.support if p in e)
        after = sum(1 for p in nu.support if act(a, p) in e)
        assert invariance_defect(nu, a, e) == abs(Fraction(after - before, len(nu.support)))


def test_invariance_defect_radius_check(sunny):
    _, fam = sunny
    nu = empirical_measure(fam, 1, 2)
    with pytest.raises(InputError):
        invariance_defect(nu, shift_map(1, BINARY), half_cylinder(fam, 2))


def test_explicit_family_rejects_foreign_pairs(sunny):
    s, _ = sunny
    with pytest.raises(InputError):
        explicit_family(s, [CalibratedPair(parse_point("|0^omega <11@0> |0^omega"), ZERO)])


def test_incomplete_family_is_caught(sunny):
    s, _ = sunny
    fam = explicit_family(s, [CalibratedPair(MARKER, ZERO), CalibratedPair(ZERO, MARKER)])
    check = validate_family(fam, 2)
    assert not check.passed
    assert len(check.missing) == 4
