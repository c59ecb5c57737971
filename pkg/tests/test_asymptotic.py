import pytest
from hypothesis import given, strategies as st

from shiftdrift.asymptotic import (
    AsymptoticPair,
    CalibratedPair,
    act,
    act_projection,
    calibrate,
    cocycle_bound,
    drift_cocycle,
    locality_radius,
    make_pair,
)
from shiftdrift.automorphisms import compose, identity, power, shift_map
from shiftdrift.errors import InvariantViolation, NotAPairError, NotAsymptoticError
from shiftdrift.gallery import MARKER, ZERO, marker_at
from shiftdrift.measure import representatives
from shiftdrift.symbolic import Alphabet, Point, first_difference, parse_point, shift_point, window

BIN = Alphabet(("0", "1"))
SIGMA = shift_map(1, BIN)


def test_marker_zero_pair():
    p = CalibratedPair(MARKER, ZERO)
    assert act(SIGMA, p) == p
    assert drift_cocycle(SIGMA, p) == 1
    assert drift_cocycle(power(SIGMA, 5), p) == 5
    assert locality_radius(SIGMA) == 2
    assert str(p) == "|0^omega <1@0> |0^omega ; |0^omega <0@0> |0^omega"


def test_pair_validation():
    with pytest.raises(NotAPairError):
        make_pair(ZERO, ZERO)
    with pytest.raises(NotAsymptoticError):
        make_pair(Point.periodic(("0", "1")), Point.periodic(("1", "0")))
    with pytest.raises(InvariantViolation):
        AsymptoticPair(MARKER, ZERO, 3)
    with pytest.raises(InvariantViolation):
        CalibratedPair(marker_at(2), ZERO)


@given(st.integers(-20, 20))
def test_calibrate_moves_difference_to_origin(k):
    p = make_pair(marker_at(k), ZERO)
    assert p.m_index == k
    c = calibrate(p)
    assert first_difference(c.x, c.y) == 0
    assert c == CalibratedPair(MARKER, ZERO)


def test_calibrated_pairs_are_ordered():
    assert CalibratedPair(MARKER, ZERO) != CalibratedPair(ZERO, MARKER)


@given(st.integers(1, 6), st.integers(-3, 3))
def test_shift_cocycle_on_marker_pairs(i, k):
    p = CalibratedPair(MARKER, marker_at(i))
    assert drift_cocycle(power(SIGMA, k) if k else identity(BIN), p) == k
    assert act(power(SIGMA, k) if k else identity(BIN), p) == p


def test_cocycle_bound():
    assert cocycle_bound(power(SIGMA, 3)) == 3
    assert cocycle_bound(identity(BIN)) == 0


def test_projection_of_action_matches_full_action(s_squared):
    from shiftdrift.gallery import gallery_automorphisms

    _, fam = s_squared
    autos = gallery_automorphisms("SxS")
    for p in representatives(fam, 2)[:60]:
        for a in autos.values():
            q = act(a, p)
            for r in (0, 1, 3):
                assert act_projection(a, p, r) == (window(q.x, -r, r), window(q.y, -r, r))
