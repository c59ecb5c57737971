"""Asymptotic pairs, calibration, the induced action and the drift cocycle."""

from __future__ import annotations

from dataclasses import dataclass

from .automorphisms import Automorphism, apply_block_map_word, apply_to_point, memory_bound
from .errors import InvariantViolation, NotAPairError, NotAsymptoticError
from .symbolic import EQUAL, NOT_ASYMPTOTIC, Point, first_difference, format_point, shift_point, window


@dataclass(frozen=True)
class AsymptoticPair:
    """Distinct points agreeing strictly left of ``m_index`` and differing there."""

    x: Point
    y: Point
    m_index: int

    def __post_init__(self):
        m = first_difference(self.x, self.y)
        if m is EQUAL:
            raise NotAPairError("the two points are equal")
        if m is NOT_ASYMPTOTIC:
            raise NotAsymptoticError("the two points differ infinitely often to the left")
        if m != self.m_index:
            raise InvariantViolation(f"cached first difference {self.m_index} != actual {m}")


@dataclass(frozen=True)
class CalibratedPair:
    """An element of CA: an asymptotic pair whose first difference is at 0.

    Pairs are ordered, so ``(x, y)`` and ``(y, x)`` are different elements.
    """

    x: Point
    y: Point

    def __post_init__(self):
        AsymptoticPair(self.x, self.y, 0)

    @property
    def pair(self) -> AsymptoticPair:
        return AsymptoticPair(self.x, self.y, 0)

    def project(self, n: int) -> tuple:
        """Centered radius-``n`` windows of both points."""
        return window(self.x, -n, n), window(self.y, -n, n)

    def __str__(self):
        return f"{format_point(self.x)} ; {format_point(self.y)}"


def make_pair(x: Point, y: Point) -> AsymptoticPair:
    m = first_difference(x, y)
    if m is EQUAL:
        raise NotAPairError("the two points are equal")
    if m is NOT_ASYMPTOTIC:
        raise NotAsymptoticError("the two points differ infinitely often to the left")
    return AsymptoticPair(x, y, m)


def calibrate(p: AsymptoticPair) -> CalibratedPair:
    """Shift both points so that their first difference sits at 0."""
    return CalibratedPair(shift_point(p.x, -p.m_index), shift_point(p.y, -p.m_index))


def cocycle_bound(a: Automorphism) -> int:
    """``max(k, k')``: bounds how far ``a`` can move the first difference."""
    return max(memory_bound(a))


def locality_radius(a: Automorphism) -> int:
    """Radius ``b`` such that window ``[-m, m]`` of ``act(a, p)`` depends only
    on window ``[-m-b, m+b]`` of ``p``."""
    return a.forward.memory + cocycle_bound(a)


def _scan(a: Automorphism, p: CalibratedPair) -> int:
    # the images agree left of -k automatically; only {-B..B} can hold the
    # new first difference when (forward, inverse) really is an automorphism
    k = a.forward.memory
    B = cocycle_bound(a)
    fx = apply_block_map_word(a.forward, window(p.x, -B - k, B + k))
    fy = apply_block_map_word(a.forward, window(p.y, -B - k, B + k))
    for i, (u, v) in enumerate(zip(fx, fy)):
        if u != v:
            return i - B
    raise InvariantViolation(
        f"{a.label}: images of {p} agree on [-{B}, {B}]; the block maps are not mutually inverse"
    )


def drift_cocycle(a: Automorphism, p: CalibratedPair) -> int:
    """``M(a x, a y)``: where the first difference lands after applying ``a``."""
    return _scan(a, p)


def act(a: Automorphism, p: CalibratedPair) -> CalibratedPair:
    """The induced action: apply ``a`` to both points, then recalibrate."""
    m = _scan(a, p)
    return CalibratedPair(
        shift_point(apply_to_point(a, p.x), -m),
        shift_point(apply_to_point(a, p.y), -m),
    )


def act_projection(a: Automorphism, p: CalibratedPair, r: int) -> tuple:
    """Radius-``r`` projection of ``act(a, p)`` computed from windows only."""
    m = _scan(a, p)
    k = a.forward.memory
    return (
        apply_block_map_word(a.forward, window(p.x, m - r - k, m + r + k)),
        apply_block_map_word(a.forward, window(p.y, m - r - k, m + r + k)),
    )
