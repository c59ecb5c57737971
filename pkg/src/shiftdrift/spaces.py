"""Shift spaces given by sofic automata, orbit closures, and finite products.

Each presentation answers the same questions exactly: which words of a
given length occur, whether a word occurs, whether an eventually periodic
point lies in the space, and how to realize a word as a point.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from math import lcm, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, ResourceError
from .symbolic import Alphabet, Point, Tail, Word, shift_point


@dataclass(frozen=True)
class EnumerationCap:
    max_length: int = 64
    max_words: int = 2_000_000

    def check_length(self, n: int):
        if n > self.max_length:
            raise ResourceError(f"word length {n} exceeds the enumeration cap {self.max_length}")

    def check_count(self, count: int):
        if count > self.max_words:
            raise ResourceError(f"{count} words exceed the enumeration cap {self.max_words}")


DEFAULT_CAP = EnumerationCap()


class ShiftSpace(ABC):
    """Common interface; concrete presentations are frozen dataclasses."""

    alphabet: Alphabet
    name: str

    @abstractmethod
    def _enumerate(self, n: int, cap: EnumerationCap) -> list:
        """All words of length ``n``, sorted."""

    @abstractmethod
    def contains_point(self, p: Point) -> bool: ...

    @abstractmethod
    def realize(self, word: Sequence, offset: int) -> Point:
        """A point of the space carrying ``word`` on ``[offset, offset + len(word))``."""

    @abstractmethod
    def sample_points(self, radius: int) -> list:
        """Finitely many points, enough to realize every word of length ``2*radius+1``."""

    def exact_entropy(self) -> float | None:
        """Entropy known from the presentation, or ``None``."""
        return None

    def is_finite(self) -> bool | None:
        """Finiteness known from the presentation, or ``None``."""
        return None

    def words(self, n: int, cap: EnumerationCap = DEFAULT_CAP) -> list:
        if n < 0:
            raise InputError(f"word length must be non-negative, got {n}")
        cap.check_length(n)
        cache = self._cache.setdefault("words", {})
        if n not in cache:
            cache[n] = self._enumerate(n, cap)
        cap.check_count(len(cache[n]))
        return cache[n]

    def count_words(self, n: int, cap: EnumerationCap = DEFAULT_CAP) -> int:
        """``P(n)``; presentations that can count without listing override this."""
        return len(self.words(n, cap))

    def word_set(self, n: int, cap: EnumerationCap = DEFAULT_CAP) -> frozenset:
        cache = self._cache.setdefault("word_set", {})
        if n not in cache:
            cache[n] = frozenset(self.words(n, cap))
        return cache[n]

    def contains_word(self, w: Sequence) -> bool:
        w = self.alphabet.check_word(w)
        if not w:
            return True
        return w in self.word_set(len(w), EnumerationCap(max_length=max(len(w), DEFAULT_CAP.max_length)))


# sofic ---------------------------------------------------------------------


@dataclass(frozen=True)
class SoficShift(ShiftSpace):
    """Bi-infinite label sequences of a finite edge-labelled graph.

    Stranded states are pruned on construction so that every remaining state
    lies on a bi-infinite path.
    """

    alphabet: Alphabet
    edges: tuple
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(sorted({tuple(e) for e in self.edges}, key=lambda e: (str(e[0]), self.alphabet.index(e[1]), str(e[2]))))
        for _, a, _ in edges:
            self.alphabet.index(a)
        while True:
            sources = {e[0] for e in edges}
            targets = {e[2] for e in edges}
            kept = tuple(e for e in edges if e[0] in targets and e[2] in sources)
            if kept == edges:
                break
            edges = kept
        if not edges:
            raise InputError("automaton has no bi-infinite path")
        object.__setattr__(self, "edges", edges)

    @property
    def states(self) -> tuple:
        seen = {}
        for q, _, r in self.edges:
            seen.setdefault(q, None)
            seen.setdefault(r, None)
        return tuple(sorted(seen, key=str))

    def _post_table(self):
        if "post" not in self._cache:
            table = {}
            pre = {}
            for q, a, r in self.edges:
                table.setdefault((q, a), set()).add(r)
                pre.setdefault((r, a), set()).add(q)
            self._cache["post"] = {k: frozenset(v) for k, v in table.items()}
            self._cache["pre"] = {k: frozenset(v) for k, v in pre.items()}
        return self._cache["post"], self._cache["pre"]

    def post(self, states: Iterable, word: Sequence) -> frozenset:
        table, _ = self._post_table()
        current = frozenset(states)
        for a in word:
            current = frozenset(r for q in current for r in table.get((q, a), ()))
            if not current:
                break
        return current

    def pre(self, states: Iterable, word: Sequence) -> frozenset:
        _, table = self._post_table()
        current = frozenset(states)
        for a in reversed(tuple(word)):
            current = frozenset(q for r in current for q in table.get((r, a), ()))
            if not current:
                break
        return current

    def _enumerate(self, n, cap):
        frontier = [((), frozenset(self.states))]
        for _ in range(n):
            nxt = []
            for w, states in frontier:
                for a in self.alphabet:
                    t = self.post(states, (a,))
                    if t:
                        nxt.append((w + (a,), t))
            cap.check_count(len(nxt))
            frontier = nxt
        return [w for w, _ in frontier]

    def contains_word(self, w):
        w = self.alphabet.check_word(w)
        return bool(self.post(self.states, w)) if w else True

    def contains_point(self, p):
        if not p.symbols() <= set(self.alphabet):
            return False
        ends = frozenset(self.states)
        while True:
            nxt = self.post(ends, p.left)
            if nxt == ends:
                break
            ends = nxt
        starts = frozenset(self.states)
        while True:
            nxt = self.pre(starts, p.right)
            if nxt == starts:
                break
            starts = nxt
        return bool(self.post(ends, p.core) & starts)

    def _edge_key(self, e):
        return (self.alphabet.index(e[1]), str(e[0]), str(e[2]))

    def realize(self, word, offset):
        word = self.alphabet.check_word(word)
        layers = [frozenset(self.states)]
        for a in word:
            layers.append(self.post(layers[-1], (a,)))
        if not layers[-1]:
            raise InputError(f"word {word!r} does not occur in {self.name or 'the space'}")
        # walk back along a deterministic path
        path = [min(layers[-1], key=str)]
        for t in range(len(word) - 1, -1, -1):
            q = min(
                (e[0] for e in self.edges if e[1] == word[t] and e[2] == path[-1] and e[0] in layers[t]),
                key=str,
            )
            path.append(q)
        start, end = path[-1], path[0]
        left_labels, left_cycle = self._walk(start, backward=True)
        right_labels, right_cycle = self._walk(end, backward=False)
        return Point.from_tails(
            Tail("left", left_labels, left_cycle),
            word,
            offset,
            Tail("right", right_labels, right_cycle),
        )

    def _walk(self, state, backward):
        """Follow minimal edges from ``state`` until a state repeats."""
        seen = {state: 0}
        labels = []
        q = state
        while True:
            if backward:
                e = min((e for e in self.edges if e[2] == q), key=self._edge_key)
                q = e[0]
            else:
                e = min((e for e in self.edges if e[0] == q), key=self._edge_key)
                q = e[2]
            labels.append(e[1])
            if q in seen:
                j = seen[q]
                return tuple(labels[:j]), tuple(labels[j:])
            seen[q] = len(labels)

    def sample_points(self, radius):
        pts = {self.realize(w, -radius) for w in self.words(2 * radius + 1)}
        return sorted(pts, key=Point.sort_key)

    def _subset_arcs(self) -> tuple:
        """Arcs of the deterministic subset presentation started from all
        states; its paths from node 0 correspond one-to-one to words."""
        if "subset" not in self._cache:
            start = frozenset(self.states)
            index = {start: 0}
            queue = [start]
            arcs = []
            while queue:
                s = queue.pop()
                for a in self.alphabet:
                    t = self.post(s, (a,))
                    if not t:
                        continue
                    if t not in index:
                        index[t] = len(index)
                        queue.append(t)
                    arcs.append((index[s], index[t]))
            self._cache["subset"] = (len(index), tuple(arcs))
        return self._cache["subset"]

    def count_words(self, n, cap=DEFAULT_CAP):
        if n < 0:
            raise InputError(f"word length must be non-negative, got {n}")
        size, arcs = self._subset_arcs()
        paths = [1] + [0] * (size - 1)
        for _ in range(n):
            nxt = [0] * size
            for i, j in arcs:
                nxt[j] += paths[i]
            paths = nxt
        return sum(paths)

    def exact_entropy(self):
        """Log spectral radius of the subset-construction presentation."""
        if "entropy" not in self._cache:
            size, arcs = self._subset_arcs()
            m = np.zeros((size, size))
            for i, j in arcs:
                m[i, j] += 1
            rho = max(abs(np.linalg.eigvals(m)))
            self._cache["entropy"] = 0.0 if rho <= 1 + 1e-9 else math.log(rho)
        return self._cache["entropy"]


# orbit closures --------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClosure(ShiftSpace):
    """Closure of the shift orbits of finitely many eventually periodic points.

    The closure adds exactly the orbits of the periodic points each
    generator converges to on either side.
    """

    alphabet: Alphabet
    generators: tuple
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.generators:
            raise InputError("orbit closure needs at least one generator")
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            self.alphabet.check_word(g.symbols())

    def periodic_points(self) -> list:
        """Periodic generators and tail limits, one representative each."""
        out = []
        for g in self.generators:
            for c in (Point(g.left, (), g.left, g.lo), Point(g.right, (), g.right, g.hi)):
                if not any(_same_orbit(c, d) for d in out):
                    out.append(c)
        return out

    def _aperiodic(self):
        return [g for g in self.generators if not g.is_periodic]

    def _candidates(self, length, offset):
        """Every point of the closure, up to shift, that could carry a word
        of ``length`` at ``offset``; deterministic order."""
        for c in self.periodic_points():
            for t in range(len(c.left)):
                yield shift_point(c, t)
        for g in self._aperiodic():
            first = g.lo - length - len(g.left)
            last = g.hi + len(g.right)
            for start in range(first, last + 1):
                yield shift_point(g, offset - start)

    def _enumerate(self, n, cap):
        found = set()
        for p in self._candidates(n, 0):
            found.add(p.window(0, n - 1) if n else ())
            if len(found) > cap.max_words:
                cap.check_count(len(found))
        return self.alphabet.sorted(found)

    def contains_point(self, p):
        if not p.symbols() <= set(self.alphabet):
            return False
        if p.is_periodic:
            return any(
                shift_point(c, t) == p for c in self.periodic_points() for t in range(len(c.left))
            )
        return any(shift_point(g, p.lo - g.lo) == p for g in self._aperiodic())

    def realize(self, word, offset):
        word = self.alphabet.check_word(word)
        n = len(word)
        for p in self._candidates(n, offset):
            if not n or p.window(offset, offset + n - 1) == word:
                return p
        raise InputError(f"word {word!r} does not occur in {self.name or 'the space'}")

    def sample_points(self, radius):
        pts = set()
        for c in self.periodic_points():
            pts.update(shift_point(c, t) for t in range(len(c.left)))
        for g in self._aperiodic():
            width = 2 * radius + 1
            for start in range(g.lo - width - len(g.left), g.hi + len(g.right) + 1):
                pts.add(shift_point(g, -radius - start))
        return sorted(pts, key=Point.sort_key)

    def exact_entropy(self):
        return 0.0

    def is_finite(self):
        return not self._aperiodic()


def _same_orbit(c: Point, d: Point) -> bool:
    return len(c.left) == len(d.left) and any(shift_point(c, t) == d for t in range(len(c.left)))


# products --------------------------------------------------------------------


@dataclass(frozen=True)
class ProductShift(ShiftSpace):
    """Cartesian product; symbols are tuples of component symbols."""

    components: tuple
    name: str = field(default="", compare=False)
    alphabet: Alphabet = field(init=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.components) < 2:
            raise InputError("a product needs at least two components")
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "alphabet", Alphabet.product(*(c.alphabet for c in self.components)))

    def split(self, word: Sequence) -> list:
        word = tuple(word)
        return [tuple(s[i] for s in word) for i in range(len(self.components))]

    def _enumerate(self, n, cap):
        lists = [c.words(n, cap) for c in self.components]
        cap.check_count(prod(len(ws) for ws in lists))
        return self.alphabet.sorted(tuple(zip(*ws)) for ws in itertools.product(*lists))

    def contains_word(self, w):
        w = self.alphabet.check_word(w)
        return all(c.contains_word(part) for c, part in zip(self.components, self.split(w)))

    def contains_point(self, p):
        if not p.symbols() <= set(self.alphabet):
            return False
        return all(c.contains_point(p.component(i)) for i, c in enumerate(self.components))

    def realize(self, word, offset):
        word = self.alphabet.check_word(word)
        if not word:
            return Point.zip(*(c.realize((), offset) for c in self.components))
        return Point.zip(*(c.realize(part, offset) for c, part in zip(self.components, self.split(word))))

    def sample_points(self, radius):
        samples = [c.sample_points(radius) for c in self.components]
        return sorted({Point.zip(*ps) for ps in itertools.product(*samples)}, key=Point.sort_key)

    def count_words(self, n, cap=DEFAULT_CAP):
        return prod(c.count_words(n, cap) for c in self.components)

    def exact_entropy(self):
        parts = [c.exact_entropy() for c in self.components]
        return None if any(h is None for h in parts) else sum(parts)

    def is_finite(self):
        parts = [c.is_finite() for c in self.components]
        if all(parts):
            return True
        if any(f is False for f in parts):
            return False
        return None


# functional interface --------------------------------------------------------


def words(s: ShiftSpace, n: int, cap: EnumerationCap = DEFAULT_CAP) -> list:
    """The length-``n`` words of ``s``, lexicographically sorted."""
    return s.words(n, cap)


def contains_word(s: ShiftSpace, w: Sequence) -> bool:
    return s.contains_word(w)


def is_point_in(s: ShiftSpace, p: Point) -> bool:
    return s.contains_point(p)


def entropy_estimate(s: ShiftSpace, n: int, cap: EnumerationCap = DEFAULT_CAP) -> float:
    """``log(P(n)) / n`` with the natural logarithm."""
    if n < 1:
        raise InputError(f"entropy estimate needs n >= 1, got {n}")
    return math.log(s.count_words(n, cap)) / n


@dataclass(frozen=True)
class ComplexityReport:
    counts: dict
    entropy_estimates: dict


def complexity_report(s: ShiftSpace, n_max: int, cap: EnumerationCap = DEFAULT_CAP) -> ComplexityReport:
    counts = {n: s.count_words(n, cap) for n in range(1, n_max + 1)}
    return ComplexityReport(counts, {n: math.log(c) / n for n, c in counts.items()})


@dataclass(frozen=True)
class GuardResult:
    passed: bool
    reason: str


def infinite_shift_guard(s: ShiftSpace, n_max: int = 16) -> GuardResult:
    """Flags spaces whose complexity stops growing, which forces finiteness."""
    finite = s.is_finite()
    if finite is True:
        return GuardResult(False, "presentation is finite (all generators periodic)")
    prev = len(s.words(1))
    for n in range(2, n_max + 1):
        count = len(s.words(n))
        if count == prev:
            return GuardResult(False, f"P({n - 1}) = P({n}) = {count}: the shift is finite")
        prev = count
    return GuardResult(True, f"P(n) strictly increasing up to n = {n_max}")


@dataclass(frozen=True)
class EntropyCertificate:
    n: int
    estimate: float
    exact: float | None
    threshold: float
    passed: bool

    @property
    def method(self) -> str:
        return "presentation" if self.exact is not None else "estimate"

    def describe(self) -> str:
        verdict = "zero entropy" if self.passed else "refused: positive entropy"
        basis = (
            f"exact entropy {self.exact:.6f} from the presentation"
            if self.exact is not None
            else f"estimate vs threshold {self.threshold}"
        )
        return f"{verdict} (estimate {self.estimate:.6f} at n={self.n}; {basis})"


def zero_entropy_certificate(s: ShiftSpace, n: int, threshold: float = 0.05) -> EntropyCertificate:
    """Exact entropy wins when the presentation knows it; otherwise the
    estimate at ``n`` is compared with ``threshold``."""
    estimate = entropy_estimate(s, n)
    exact = s.exact_entropy()
    passed = exact <= 1e-12 if exact is not None else estimate <= threshold
    return EntropyCertificate(n, estimate, exact, threshold, passed)
