"""Alphabets, words and eventually periodic bi-infinite points.

A :class:`Point` is stored as a finite core flanked by two periodic tails.
Construction always canonicalizes (primitive periods, shortest core), so
two points describing the same sequence are equal and hash alike.

Coordinates follow the shift convention ``[shift(x)]_n = x_{n-1}``: shifting
by ``k`` moves every symbol ``k`` places to the right.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Hashable, Iterable, Sequence

from .errors import InputError

Symbol = Hashable
Word = tuple


@dataclass(frozen=True)
class Alphabet:
    """A finite, totally ordered set of symbols.

    The order is the order of ``symbols`` and is used for every
    lexicographic tie-break in the package.
    """

    symbols: tuple
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise InputError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise InputError(f"alphabet symbols must be distinct: {symbols!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def product(cls, *alphabets: "Alphabet") -> "Alphabet":
        from itertools import product

        return cls(tuple(product(*(a.symbols for a in alphabets))))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InputError(f"symbol {symbol!r} is not in the alphabet") from None

    def key(self, word: Iterable) -> tuple:
        """Sort key realizing the lexicographic order on words."""
        return tuple(self.index(s) for s in word)

    def sorted(self, words: Iterable[Word]) -> list:
        return sorted(words, key=self.key)

    def check_word(self, word: Iterable) -> Word:
        word = tuple(word)
        for s in word:
            if s not in self._index:
                raise InputError(f"symbol {s!r} is not in the alphabet")
        return word

    def encode(self, word: Iterable) -> bytes:
        return bytes(self.index(s) for s in word)

    def decode(self, codes: Iterable[int]) -> Word:
        return tuple(self.symbols[int(c)] for c in codes)


@dataclass(frozen=True)
class Tail:
    """One-sided eventually periodic stream, read away from the core.

    A left tail with preperiod ``(a, b)`` puts ``a`` immediately left of the
    core and ``b`` left of that, then repeats ``period`` leftwards.
    """

    direction: str
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        if self.direction not in ("left", "right"):
            raise InputError(f"tail direction must be 'left' or 'right', got {self.direction!r}")
        if not self.period:
            raise InputError("tail period must be non-empty")
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))


def primitive_root(pattern: Sequence) -> tuple:
    """Shortest ``r`` with ``pattern == r * k``."""
    pattern = tuple(pattern)
    p = len(pattern)
    for d in range(1, p + 1):
        if p % d == 0 and pattern == pattern[:d] * (p // d):
            return pattern[:d]
    return pattern


def _canonical(left, core, right, lo):
    left = primitive_root(left)
    right = primitive_root(right)
    pl, pr = len(left), len(right)
    hi = lo + len(core)

    def at(n):
        if n < lo:
            return left[(n - lo) % pl]
        if n < hi:
            return core[n - lo]
        return right[(n - hi) % pr]

    span = lcm(pl, pr)
    limit = hi + span
    n = lo
    while n < limit and at(n) == left[(n - lo) % pl]:
        n += 1
    if n == limit:
        # the left pattern never breaks: purely periodic, anchored at 0
        pattern = tuple(at(i) for i in range(pl))
        return pattern, (), pattern, 0
    b_left = n
    n = hi - 1
    while at(n) == right[(n - hi) % pr]:
        n -= 1
    b_right = n
    new_lo = b_left
    new_hi = max(b_left, b_right + 1)
    return (
        tuple(at(new_lo - pl + i) for i in range(pl)),
        tuple(at(i) for i in range(new_lo, new_hi)),
        tuple(at(new_hi + i) for i in range(pr)),
        new_lo,
    )


@dataclass(frozen=True)
class Point:
    """A bi-infinite sequence with eventually periodic tails.

    ``x_n = left[(n - lo) % len(left)]`` for ``n < lo``, ``core[n - lo]`` on
    ``lo <= n < hi`` and ``right[(n - hi) % len(right)]`` for ``n >= hi``.
    Fields are canonicalized on construction.
    """

    left: tuple
    core: tuple
    right: tuple
    lo: int = 0

    def __post_init__(self):
        if not self.left or not self.right:
            raise InputError("tail periods must be non-empty")
        left, core, right, lo = _canonical(
            tuple(self.left), tuple(self.core), tuple(self.right), int(self.lo)
        )
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "lo", lo)

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, symbol) -> "Point":
        return cls((symbol,), (), (symbol,), 0)

    @classmethod
    def periodic(cls, pattern: Sequence, phase: int = 0) -> "Point":
        """The point with ``x_n = pattern[(n - phase) % len(pattern)]``."""
        pattern = tuple(pattern)
        return cls(pattern, (), pattern, phase)

    @classmethod
    def from_tails(cls, left: Tail, core: Sequence, origin: int, right: Tail) -> "Point":
        """Build from tails read away from a core whose first symbol sits at ``origin``."""
        if left.direction != "left" or right.direction != "right":
            raise InputError("expected a left tail and a right tail")
        core = tuple(core)
        lo = origin - len(left.preperiod)
        body = tuple(reversed(left.preperiod)) + core + right.preperiod
        return cls(tuple(reversed(left.period)), body, right.period, lo)

    @classmethod
    def from_function(
        cls,
        f: Callable[[int], Symbol],
        lo: int,
        hi: int,
        left_period: int,
        right_period: int,
    ) -> "Point":
        """Sample ``f``, which must be ``left_period``-periodic below ``lo``
        and ``right_period``-periodic from ``hi`` on."""
        return cls(
            tuple(f(lo - left_period + i) for i in range(left_period)),
            tuple(f(n) for n in range(lo, hi)),
            tuple(f(hi + i) for i in range(right_period)),
            lo,
        )

    @classmethod
    def zip(cls, *points: "Point") -> "Point":
        """Coordinatewise tuple of several points (a point of a product shift)."""
        lo = min(p.lo for p in points)
        hi = max(p.hi for p in points)
        pl = lcm(*(len(p.left) for p in points))
        pr = lcm(*(len(p.right) for p in points))
        return cls.from_function(lambda n: tuple(p[n] for p in points), lo, hi, pl, pr)

    def map(self, fn: Callable[[Symbol], Symbol]) -> "Point":
        return Point(
            tuple(fn(s) for s in self.left),
            tuple(fn(s) for s in self.core),
            tuple(fn(s) for s in self.right),
            self.lo,
        )

    def component(self, i: int) -> "Point":
        return self.map(lambda s: s[i])

    # access -------------------------------------------------------------

    @property
    def hi(self) -> int:
        return self.lo + len(self.core)

    @property
    def is_periodic(self) -> bool:
        return not self.core and self.left == self.right and self.lo == 0

    @property
    def left_tail(self) -> Tail:
        return Tail("left", (), tuple(reversed(self.left)))

    @property
    def right_tail(self) -> Tail:
        return Tail("right", (), self.right)

    def symbols(self) -> set:
        return set(self.left) | set(self.core) | set(self.right)

    def __getitem__(self, n: int):
        if n < self.lo:
            return self.left[(n - self.lo) % len(self.left)]
        hi = self.lo + len(self.core)
        if n < hi:
            return self.core[n - self.lo]
        return self.right[(n - hi) % len(self.right)]

    def window(self, lo: int, hi: int) -> Word:
        return window(self, lo, hi)

    def __repr__(self):
        try:
            return f"Point({format_point(self)!r})"
        except InputError:
            return f"Point(left={self.left!r}, core={self.core!r}, right={self.right!r}, lo={self.lo})"

    def sort_key(self) -> tuple:
        """Deterministic (not alphabet-aware) ordering key."""
        return (self.lo, repr(self.left), repr(self.core), repr(self.right))


def window(p: Point, lo: int, hi: int) -> Word:
    """The word ``(x_lo, ..., x_hi)``; both ends inclusive."""
    if lo > hi:
        raise InputError(f"empty window: lo={lo} > hi={hi}")
    return tuple(p[n] for n in range(lo, hi + 1))


def shift_point(p: Point, k: int) -> Point:
    """``k``-fold shift: the result ``q`` has ``q_n = p_{n-k}``."""
    if k == 0:
        return p
    return Point(p.left, p.core, p.right, p.lo + k)


class Relation(enum.Enum):
    EQUAL = "equal"
    NOT_ASYMPTOTIC = "not-asymptotic"

    def __repr__(self):
        return self.value


EQUAL = Relation.EQUAL
NOT_ASYMPTOTIC = Relation.NOT_ASYMPTOTIC


def first_difference(x: Point, y: Point):
    """First coordinate where ``x`` and ``y`` differ.

    Returns an ``int``, :data:`EQUAL` when the points coincide, or
    :data:`NOT_ASYMPTOTIC` when they differ infinitely often to the left.
    """
    lo = min(x.lo, y.lo)
    span = lcm(len(x.left), len(y.left))
    for n in range(lo - span, lo):
        if x[n] != y[n]:
            return NOT_ASYMPTOTIC
    hi = max(x.hi, y.hi) + lcm(len(x.right), len(y.right))
    for n in range(lo, hi):
        if x[n] != y[n]:
            return n
    return EQUAL


# literals ------------------------------------------------------------------

_POINT_RE = re.compile(
    r"""^\s*
    (?P<lpre>[^|<>@^]*)\|(?P<lper>[^|<>@^]*)\^\s*omega\s*
    <(?P<core>[^|<>@^]*)@\s*(?P<origin>[+-]?\d+)\s*>
    (?P<rpre>[^|<>@^]*)\|(?P<rper>[^|<>@^]*)\^\s*omega\s*$""",
    re.VERBOSE,
)


def parse_symbol(token: str):
    token = token.strip()
    if not token:
        raise InputError("empty symbol")
    if "." in token:
        parts = tuple(t.strip() for t in token.split("."))
        if not all(parts):
            raise InputError(f"malformed product symbol {token!r}")
        return parts
    return token


def parse_symbols(text: str) -> Word:
    """Parse a symbol list: comma separated, or one character per symbol."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(parse_symbol(t) for t in text.split(","))
    if "." in text:
        return (parse_symbol(text),)
    return tuple(c for c in text if not c.isspace())


def format_symbol(s) -> str:
    if isinstance(s, tuple):
        if any(isinstance(c, tuple) for c in s):
            raise InputError(f"nested product symbol {s!r} has no literal form")
        return ".".join(str(c) for c in s)
    return str(s)


def format_symbols(word: Iterable) -> str:
    tokens = [format_symbol(s) for s in word]
    if all(len(t) == 1 for t in tokens):
        return "".join(tokens)
    return ",".join(tokens)


def parse_point(text: str) -> Point:
    """Parse ``lpre|lper^omega <core@origin> rpre|rper^omega``.

    Tails are written in reading order away from the core, so the left
    preperiod lists ``x_{origin-1}, x_{origin-2}, ...``.
    """
    m = _POINT_RE.match(text)
    if m is None:
        raise InputError(f"malformed point literal {text!r}")
    lper = parse_symbols(m["lper"])
    rper = parse_symbols(m["rper"])
    if not lper or not rper:
        raise InputError(f"tail period must be non-empty in {text!r}")
    return Point.from_tails(
        Tail("left", parse_symbols(m["lpre"]), lper),
        parse_symbols(m["core"]),
        int(m["origin"]),
        Tail("right", parse_symbols(m["rpre"]), rper),
    )


def format_point(p: Point) -> str:
    lper = tuple(reversed(p.left))
    if p.core:
        core, origin, rper = p.core, p.lo, p.right
    else:
        core, origin = (p[p.lo],), p.lo
        rper = tuple(p[p.lo + 1 + t] for t in range(len(p.right)))
    return (
        f"|{format_symbols(lper)}^omega "
        f"<{format_symbols(core)}@{origin}> "
        f"|{format_symbols(rper)}^omega"
    )
