"""Word-pair windows of CA, representative sections and stage measures.

A :class:`CAFamily` describes the calibrated asymptotic pairs of a space as
a finite list of schemas.  Each schema can list the radius-``n`` projections
of all of its pairs (as an ``(K, 2, 2n+1)`` array of alphabet codes) and can
realize any of them as an actual :class:`CalibratedPair`.

Schemas come in two kinds:

* :class:`ListSchema` -- an explicit, radius-dependent list of pairs that is
  rich enough to realize every radius-``n`` projection of the schema;
* :class:`ProductSchema` -- pairs of a product space built coordinatewise
  from two *components*: :class:`Diagonal` (equal points ranging over a
  space), :class:`Calibrated` (a family's pairs) and :class:`Delayed` (a
  family's pairs shifted right so the first difference sits at ``j``).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .asymptotic import CalibratedPair, act_projection, locality_radius
from .automorphisms import Automorphism
from .errors import FamilyIncompleteError, InputError, ResourceError
from .spaces import EnumerationCap, ShiftSpace
from .symbolic import EQUAL, Alphabet, Point, Word, first_difference, shift_point, window

MAX_RADIUS = 64
MAX_PAIRS = 2_000_000


def _empty(n: int) -> np.ndarray:
    return np.zeros((0, 2, 2 * n + 1), dtype=np.uint8)


def _as_bytes(rows: np.ndarray) -> np.ndarray:
    # one opaque item per row; sorting these is lexicographic on the codes
    flat = np.ascontiguousarray(rows).reshape(len(rows), -1)
    return flat.view(np.dtype((np.void, flat.shape[1]))).ravel()


def _sorted_unique(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    _, first = np.unique(_as_bytes(rows), return_index=True)
    return np.ascontiguousarray(rows[first])


def _first_difference_column(row: np.ndarray) -> int:
    diff = np.nonzero(row[0] != row[1])[0]
    return int(diff[0]) if len(diff) else -1


class PairSource(ABC):
    """Something that yields radius-``n`` projections of pairs of points."""

    alphabet: Alphabet

    @abstractmethod
    def rows(self, n: int) -> np.ndarray: ...

    def count(self, n: int) -> int:
        return len(self.rows(n))

    @abstractmethod
    def contains(self, row: np.ndarray, n: int) -> bool: ...

    @abstractmethod
    def realize_points(self, row: np.ndarray, n: int) -> tuple: ...

    @property
    @abstractmethod
    def descriptor(self) -> tuple: ...


# schemas ---------------------------------------------------------------------


class ListSchema(PairSource):
    """Pairs supplied by ``instances(n)``; earlier instances win ties."""

    def __init__(self, name: str, alphabet: Alphabet, instances: Callable[[int], Sequence[CalibratedPair]], descriptor=None):
        self.name = name
        self.alphabet = alphabet
        self.instances = instances
        self._descriptor = descriptor if descriptor is not None else ("list", name)
        self._tables = {}

    @classmethod
    def fixed(cls, name: str, alphabet: Alphabet, pairs: Iterable[CalibratedPair]) -> "ListSchema":
        pairs = tuple(pairs)
        return cls(name, alphabet, lambda n: pairs, ("pairs", name, pairs))

    def _table(self, n):
        if n not in self._tables:
            table = {}
            for p in self.instances(n):
                row = np.array([list(self.alphabet.encode(w)) for w in p.project(n)], dtype=np.uint8)
                table.setdefault(row.tobytes(), (row, p))
            rows = np.stack([r for r, _ in table.values()]) if table else _empty(n)
            self._tables[n] = (table, _sorted_unique(rows))
        return self._tables[n]

    def rows(self, n):
        return self._table(n)[1]

    def contains(self, row, n):
        return np.ascontiguousarray(row, dtype=np.uint8).tobytes() in self._table(n)[0]

    def realize(self, row, n) -> CalibratedPair:
        return self._table(n)[0][np.ascontiguousarray(row, dtype=np.uint8).tobytes()][1]

    def realize_points(self, row, n):
        p = self.realize(row, n)
        return p.x, p.y

    @property
    def descriptor(self):
        return self._descriptor


class Diagonal(PairSource):
    """Equal pairs ``(y, y)`` with ``y`` ranging over a space."""

    def __init__(self, space: ShiftSpace):
        self.space = space
        self.alphabet = space.alphabet
        self._rows = {}

    def rows(self, n):
        if n not in self._rows:
            ws = self.space.words(2 * n + 1, EnumerationCap(max_length=2 * MAX_RADIUS + 1))
            codes = np.array([list(self.alphabet.encode(w)) for w in ws], dtype=np.uint8)
            self._rows[n] = np.stack([codes, codes], axis=1) if len(ws) else _empty(n)
        return self._rows[n]

    def count(self, n):
        return len(self.rows(n))

    def contains(self, row, n):
        return bool(np.array_equal(row[0], row[1])) and self.space.contains_word(self.alphabet.decode(row[0]))

    def realize_points(self, row, n):
        y = self.space.realize(self.alphabet.decode(row[0]), -n)
        return y, y

    @property
    def descriptor(self):
        return ("diagonal", self.space)


class Calibrated(PairSource):
    """The calibrated pairs of a family, as a product component."""

    def __init__(self, family: "CAFamily"):
        self.family = family
        self.alphabet = family.alphabet

    def rows(self, n):
        return self.family.rows(n)

    def count(self, n):
        return self.family.count(n)

    def contains(self, row, n):
        return self.family.contains(row, n)

    def realize_points(self, row, n):
        p = self.family.realize(row, n)
        return p.x, p.y

    @property
    def descriptor(self):
        return ("calibrated", self.family.descriptor)


class Delayed(PairSource):
    """A family's pairs shifted right by ``j`` with ``min_delay <= j <= n``.

    Larger delays put the first difference outside the window, so they add
    no new projections beyond those of equal pairs.
    """

    def __init__(self, family: "CAFamily", min_delay: int):
        self.family = family
        self.min_delay = min_delay
        self.alphabet = family.alphabet
        self._parts = {}

    def _part(self, n, j):
        key = (n, j)
        if key not in self._parts:
            big = self.family._rows_at(n + j)
            self._parts[key] = _sorted_unique(np.ascontiguousarray(big[:, :, : 2 * n + 1]))
        return self._parts[key]

    def rows(self, n):
        parts = [self._part(n, j) for j in range(self.min_delay, n + 1)]
        return np.concatenate(parts) if parts else _empty(n)

    def count(self, n):
        return sum(len(self._part(n, j)) for j in range(self.min_delay, n + 1))

    def contains(self, row, n):
        j = _first_difference_column(row) - n
        if j < self.min_delay or j > n:
            return False
        part = self._part(n, j)
        return bool(np.any(np.all(part == row, axis=(1, 2))))

    def realize_points(self, row, n):
        j = _first_difference_column(row) - n
        big = self.family._rows_at(n + j)
        hits = np.nonzero(np.all(big[:, :, : 2 * n + 1] == row, axis=(1, 2)))[0]
        if not len(hits):
            raise FamilyIncompleteError(f"no delayed pair realizes the requested window (delay {j})")
        p = self.family.realize(big[hits[0]], n + j)
        return shift_point(p.x, j), shift_point(p.y, j)

    @property
    def descriptor(self):
        return ("delayed", self.family.descriptor, self.min_delay)


class ProductSchema(PairSource):
    """Coordinatewise product of two components over a two-fold product alphabet."""

    def __init__(self, name: str, first: PairSource, second: PairSource):
        self.name = name
        self.first = first
        self.second = second
        self.alphabet = Alphabet.product(first.alphabet, second.alphabet)
        if len(self.alphabet) > 256:
            raise InputError("product alphabet too large for byte encoding")
        self._width = len(second.alphabet)

    def rows(self, n):
        r1, r2 = self.first.rows(n), self.second.rows(n)
        combined = r1[:, None].astype(np.uint16) * self._width + r2[None, :]
        return combined.reshape(-1, 2, 2 * n + 1).astype(np.uint8)

    def count(self, n):
        return self.first.count(n) * self.second.count(n)

    def _split(self, row):
        row = np.asarray(row, dtype=np.uint8)
        return row // self._width, row % self._width

    def contains(self, row, n):
        a, b = self._split(row)
        return self.first.contains(a, n) and self.second.contains(b, n)

    def realize_points(self, row, n):
        a, b = self._split(row)
        x1, y1 = self.first.realize_points(a, n)
        x2, y2 = self.second.realize_points(b, n)
        return Point.zip(x1, x2), Point.zip(y1, y2)

    def realize(self, row, n) -> CalibratedPair:
        return CalibratedPair(*self.realize_points(row, n))

    @property
    def descriptor(self):
        return ("product", self.name, self.first.descriptor, self.second.descriptor)


# families --------------------------------------------------------------------


class CAFamily:
    """Finite description of the calibrated asymptotic pairs of ``space``.

    ``disjoint`` declares that no two schemas share a projection at any
    radius, which lets :meth:`count` add schema counts instead of
    materializing the union.  :func:`validate_family` checks the claim.
    """

    def __init__(self, space: ShiftSpace, schemas: Sequence, name: str = "", disjoint: bool = False, descriptor=None):
        if not schemas:
            raise InputError("a CA family needs at least one schema")
        self.space = space
        self.alphabet = space.alphabet
        self.schemas = tuple(schemas)
        self.name = name
        self.disjoint = disjoint
        self._descriptor = descriptor
        self._rows = {}
        self._keys = {}
        for s in self.schemas:
            if s.alphabet != self.alphabet:
                raise InputError(f"schema {getattr(s, 'name', s)!r} uses a different alphabet")

    @property
    def descriptor(self):
        if self._descriptor is not None:
            return self._descriptor
        return ("family", tuple(s.descriptor for s in self.schemas))

    def __eq__(self, other):
        if not isinstance(other, CAFamily):
            return NotImplemented
        return self.space == other.space and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"CAFamily({self.name or self.descriptor[0]!r}, schemas={len(self.schemas)})"

    @staticmethod
    def _check_radius(n):
        if n < 0:
            raise InputError(f"radius must be non-negative, got {n}")
        if n > MAX_RADIUS:
            raise ResourceError(f"radius {n} exceeds the cap {MAX_RADIUS}")

    def count(self, n: int) -> int:
        self._check_radius(n)
        if n in self._rows:
            return len(self._rows[n])
        if self.disjoint:
            return sum(s.count(n) for s in self.schemas)
        return len(self.rows(n))

    def rows(self, n: int) -> np.ndarray:
        """``W_n`` as a sorted, duplicate-free array of alphabet codes."""
        self._check_radius(n)
        return self._rows_at(n)

    def _rows_at(self, n: int) -> np.ndarray:
        # no radius cap: delayed components read the base family at up to 2n
        if n not in self._rows:
            if self.disjoint:
                total = sum(s.count(n) for s in self.schemas)
                if total > MAX_PAIRS:
                    raise ResourceError(f"|W_{n}| = {total} exceeds the cap {MAX_PAIRS}")
            parts = [s.rows(n) for s in self.schemas]
            rows = np.concatenate(parts) if parts else _empty(n)
            if len(rows) > MAX_PAIRS:
                raise ResourceError(f"{len(rows)} word pairs at radius {n} exceed the cap {MAX_PAIRS}")
            self._rows[n] = _sorted_unique(rows)
        return self._rows[n]

    def keys(self, n: int) -> dict:
        if n not in self._keys:
            self._keys[n] = {r.tobytes(): i for i, r in enumerate(self.rows(n))}
        return self._keys[n]

    def contains(self, row, n: int) -> bool:
        return np.ascontiguousarray(row, dtype=np.uint8).tobytes() in self.keys(n)

    def realize(self, row, n: int) -> CalibratedPair:
        """The pair of the first schema (in declaration order) projecting to ``row``."""
        for s in self.schemas:
            if s.contains(row, n):
                x, y = s.realize_points(row, n)
                return CalibratedPair(x, y)
        raise FamilyIncompleteError(f"no schema realizes word pair {self._decode(row)} at radius {n}")

    def _decode(self, row) -> "WordPair":
        n = (len(row[0]) - 1) // 2
        return WordPair(self.alphabet.decode(row[0]), self.alphabet.decode(row[1]), n)

    def encode(self, pair: "WordPair") -> np.ndarray:
        return np.array([list(self.alphabet.encode(pair.w1)), list(self.alphabet.encode(pair.w2))], dtype=np.uint8)


@dataclass(frozen=True)
class WordPair:
    w1: Word
    w2: Word
    radius: int

    def __post_init__(self):
        n = 2 * self.radius + 1
        if len(self.w1) != n or len(self.w2) != n:
            raise InputError(f"word pair of radius {self.radius} needs words of length {n}")

    def restrict(self, r: int) -> "WordPair":
        c = self.radius
        return WordPair(self.w1[c - r : c + r + 1], self.w2[c - r : c + r + 1], r)


class WordPairSet:
    """Read-only, sorted view of ``W_n`` that decodes lazily."""

    def __init__(self, family: CAFamily, radius: int):
        self.family = family
        self.radius = radius
        self.array = family.rows(radius)

    def __len__(self):
        return len(self.array)

    def __iter__(self):
        for row in self.array:
            yield self.family._decode(row)

    def __contains__(self, pair):
        if not isinstance(pair, WordPair) or pair.radius != self.radius:
            return False
        try:
            return self.family.contains(self.family.encode(pair), self.radius)
        except InputError:
            return False

    def __eq__(self, other):
        if isinstance(other, WordPairSet):
            return self.radius == other.radius and np.array_equal(self.array, other.array)
        return set(self) == set(other)


def word_pairs(f: CAFamily, n: int) -> WordPairSet:
    return WordPairSet(f, n)


def representatives(f: CAFamily, n: int) -> list:
    """One calibrated pair per element of ``W_n``, in word-pair order."""
    return [f.realize(row, n) for row in f.rows(n)]


def project(p: CalibratedPair, n: int) -> WordPair:
    w1, w2 = p.project(n)
    return WordPair(w1, w2, n)


def unique_extension_fraction(f: CAFamily, n: int, m: int) -> Fraction:
    """Share of ``W_n`` with exactly one extension in ``W_{n+m}``."""
    if m < 0:
        raise InputError(f"margin must be non-negative, got {m}")
    total = f.count(n)
    if m == 0:
        return Fraction(1)
    big = f.rows(n + m)
    inner = np.ascontiguousarray(big[:, :, m : m + 2 * n + 1])
    _, counts = np.unique(_as_bytes(inner), return_counts=True)
    return Fraction(int(np.sum(counts == 1)), total)


@dataclass(frozen=True)
class WindowChoice:
    stage: int
    radius: int
    ratio: Fraction
    n_max: int


def select_window_sequence(f: CAFamily, m: int, n_max: int) -> WindowChoice:
    """The radius ``n <= n_max`` minimizing ``|W_{n+m}| / |W_n|``; ties go to
    the smallest ``n``."""
    if n_max < 1:
        raise InputError(f"n_max must be at least 1, got {n_max}")
    if n_max + m > MAX_RADIUS:
        raise ResourceError(f"n_max + m = {n_max + m} exceeds the radius cap {MAX_RADIUS}")
    best = None
    for n in range(1, n_max + 1):
        ratio = Fraction(f.count(n + m), f.count(n))
        if best is None or ratio < best[1]:
            best = (n, ratio)
    return WindowChoice(m, best[0], best[1], n_max)


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniform measure on a representative section of ``W_{n_m}``."""

    stage: int
    radius: int
    support: tuple
    ratio: Fraction = Fraction(1)
    unique_fraction: Fraction = Fraction(1)

    def __post_init__(self):
        if not self.support:
            raise InputError("empirical measure needs a non-empty support")
        projections = {p.project(self.radius) for p in self.support}
        if len(projections) != len(self.support):
            raise InputError("support does not project injectively at the measure radius")

    @property
    def weight(self) -> Fraction:
        return Fraction(1, len(self.support))

    @property
    def total_mass(self) -> Fraction:
        return self.weight * len(self.support)

    def mass(self, predicate: Callable[[CalibratedPair], bool]) -> Fraction:
        return Fraction(sum(1 for p in self.support if predicate(p)), len(self.support))


def empirical_measure(f: CAFamily, m: int, n_max: int) -> EmpiricalMeasure:
    choice = select_window_sequence(f, m, n_max)
    n = choice.radius
    return EmpiricalMeasure(
        m, n, tuple(representatives(f, n)), choice.ratio, unique_extension_fraction(f, n, m)
    )


@dataclass(frozen=True)
class Cylinder:
    """The clopen set of pairs whose radius-``radius`` projection is accepted."""

    radius: int
    accepted: frozenset

    def __post_init__(self):
        object.__setattr__(self, "accepted", frozenset(self.accepted))
        for w in self.accepted:
            if w.radius != self.radius:
                raise InputError("cylinder word pairs must all have the cylinder radius")
        object.__setattr__(self, "_keys", frozenset((w.w1, w.w2) for w in self.accepted))

    def __contains__(self, p: CalibratedPair) -> bool:
        return p.project(self.radius) in self._keys

    def accepts_projection(self, w1: Word, w2: Word) -> bool:
        return (tuple(w1), tuple(w2)) in self._keys


def half_cylinder(f: CAFamily, radius: int) -> Cylinder:
    """The first half (rounded up) of ``W_radius`` in sorted order."""
    pairs = list(word_pairs(f, radius))
    return Cylinder(radius, frozenset(pairs[: (len(pairs) + 1) // 2]))


def invariance_defect(nu: EmpiricalMeasure, a: Automorphism, e: Cylinder) -> Fraction:
    """``|nu(act^{-1} E) - nu(E)|`` by direct evaluation on the support."""
    b = locality_radius(a)
    if e.radius > nu.radius - b:
        raise InputError(
            f"cylinder radius {e.radius} exceeds measure radius {nu.radius} minus locality radius {b}"
        )
    before = sum(1 for p in nu.support if p in e)
    after = sum(1 for p in nu.support if e.accepts_projection(*act_projection(a, p, e.radius)))
    return abs(Fraction(after - before, len(nu.support)))


# validation ------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyCheck:
    radius: int
    family_size: int
    found_size: int
    missing: tuple
    spurious: tuple
    disjoint_ok: bool

    @property
    def passed(self) -> bool:
        return not self.missing and not self.spurious and self.disjoint_ok


def search_calibrated_projections(space: ShiftSpace, n: int, sample_radius: int | None = None) -> set:
    """Independent search: radius-``n`` projections of all calibrated pairs
    among sample points of ``space``."""
    R = n + 3 if sample_radius is None else sample_radius
    pts = space.sample_points(R)
    lefts = {}
    for p in pts:
        lefts.setdefault(window(p, -R - 2, -1), []).append(p)
    found = set()
    for group in lefts.values():
        for x in group:
            for y in group:
                if x is not y and first_difference(x, y) == 0:
                    found.add((window(x, -n, n), window(y, -n, n)))
    return found


def validate_family(f: CAFamily, n: int, sample_radius: int | None = None) -> FamilyCheck:
    """Window-completeness check at radius ``n``.

    Every calibrated pair found among sample points must project into the
    family's ``W_n``; every family word pair must consist of words of the
    space that agree left of the centre and differ at it.
    """
    found = search_calibrated_projections(f.space, n, sample_radius)
    ws = word_pairs(f, n)
    have = {(w.w1, w.w2) for w in ws}
    missing = tuple(sorted((WordPair(a, b, n) for a, b in found - have), key=lambda w: (f.alphabet.key(w.w1), f.alphabet.key(w.w2))))
    spurious = []
    for w in ws:
        ok = (
            f.space.contains_word(w.w1)
            and f.space.contains_word(w.w2)
            and w.w1[:n] == w.w2[:n]
            and w.w1[n] != w.w2[n]
        )
        if not ok:
            spurious.append(w)
    disjoint_ok = (not f.disjoint) or sum(s.count(n) for s in f.schemas) == len(ws)
    return FamilyCheck(n, len(ws), len(found), missing, tuple(spurious), disjoint_ok)


def explicit_family(space: ShiftSpace, pairs: Sequence[CalibratedPair], name: str = "") -> CAFamily:
    """A family listing finitely many pairs, for spaces with finite CA."""
    pairs = tuple(pairs)
    for p in pairs:
        if not (space.contains_point(p.x) and space.contains_point(p.y)):
            raise InputError(f"pair {p} does not lie in {space.name or 'the space'}")
    schema = ListSchema.fixed(name or "pairs", space.alphabet, pairs)
    return CAFamily(space, [schema], name, disjoint=True, descriptor=("pairs", pairs))
