"""Sliding block codes and automorphisms given as (forward, inverse) pairs.

A :class:`BlockMap` of memory ``k`` computes ``[phi x]_m`` from the window
``x_{m-k} .. x_{m+k}``.  An :class:`Automorphism` bundles a forward map with
a user-supplied inverse; :func:`verify_automorphism` certifies the pair on
all words of a space up to a given length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import InputError
from .spaces import DEFAULT_CAP, EnumerationCap, ShiftSpace
from .symbolic import Alphabet, Point, Word

# extensional comparison enumerates A^(2k+1); refuse anything larger
_MAX_TABLE = 1 << 20


@dataclass(frozen=True, eq=False)
class BlockMap:
    memory: int
    rule: Callable[[tuple], object]
    alphabet: Alphabet
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.memory < 0:
            raise InputError(f"memory must be non-negative, got {self.memory}")

    @classmethod
    def from_table(cls, memory: int, table: Mapping, alphabet: Alphabet) -> "BlockMap":
        """Explicit table; must be total on ``alphabet ** (2*memory+1)``."""
        table = {tuple(k): v for k, v in table.items()}
        width = 2 * memory + 1
        for pattern in itertools.product(alphabet.symbols, repeat=width):
            if pattern not in table:
                raise InputError(f"block map table is missing pattern {pattern!r}")
        for pattern, value in table.items():
            if len(pattern) != width:
                raise InputError(f"pattern {pattern!r} has length {len(pattern)}, expected {width}")
            alphabet.check_word(pattern)
            if value not in alphabet:
                raise InputError(f"block map output {value!r} is not in the alphabet")
        return cls(memory, table.__getitem__, alphabet)

    @property
    def width(self) -> int:
        return 2 * self.memory + 1

    def __call__(self, window: tuple):
        try:
            return self._memo[window]
        except KeyError:
            value = self._memo[window] = self.rule(window)
            return value

    def table(self) -> dict:
        size = len(self.alphabet) ** self.width
        if size > _MAX_TABLE:
            raise InputError(f"table of {size} patterns is too large to tabulate")
        return {w: self(w) for w in itertools.product(self.alphabet.symbols, repeat=self.width)}

    def __eq__(self, other):
        if not isinstance(other, BlockMap):
            return NotImplemented
        if self.alphabet != other.alphabet:
            return False
        k = max(self.memory, other.memory)
        if len(self.alphabet) ** (2 * k + 1) > _MAX_TABLE:
            raise InputError("block maps too large to compare extensionally")
        a, b = self.memory, other.memory
        return all(
            self(w[k - a : k + a + 1]) == other(w[k - b : k + b + 1])
            for w in itertools.product(self.alphabet.symbols, repeat=2 * k + 1)
        )

    def __hash__(self):
        return hash((self.alphabet, type(self).__name__))


def apply_block_map_word(b: BlockMap, w: Sequence) -> Word:
    """Image of ``w`` under ``b``: one output per fully covered position."""
    w = tuple(w)
    k = b.memory
    if len(w) < 2 * k + 1:
        raise InputError(f"word of length {len(w)} is shorter than the block width {2 * k + 1}")
    return tuple(b(w[i : i + 2 * k + 1]) for i in range(len(w) - 2 * k))


def apply_block_map_point(b: BlockMap, p: Point) -> Point:
    k = b.memory

    def f(n):
        return b(tuple(p[j] for j in range(n - k, n + k + 1)))

    return Point.from_function(f, p.lo - k, p.hi + k, len(p.left), len(p.right))


def compose_block_maps(outer: BlockMap, inner: BlockMap) -> BlockMap:
    """``outer`` after ``inner``; memories add."""
    if outer.alphabet != inner.alphabet:
        raise InputError("cannot compose block maps over different alphabets")
    return BlockMap(
        outer.memory + inner.memory,
        lambda w: outer(apply_block_map_word(inner, w)),
        outer.alphabet,
    )


@dataclass(frozen=True)
class Automorphism:
    forward: BlockMap
    inverse: BlockMap
    label: str = field(default="", compare=False)
    expr: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.forward.alphabet != self.inverse.alphabet:
            raise InputError("forward and inverse block maps use different alphabets")

    @property
    def alphabet(self) -> Alphabet:
        return self.forward.alphabet

    def inverted(self) -> "Automorphism":
        expr = f"inverse({self.expr})" if self.expr else None
        return Automorphism(self.inverse, self.forward, f"{self.label}^-1", expr)

    def __call__(self, p: Point) -> Point:
        return apply_block_map_point(self.forward, p)


def apply_to_point(a, p: Point) -> Point:
    """Exact image of an eventually periodic point (tails keep their periods)."""
    b = a.forward if isinstance(a, Automorphism) else a
    return apply_block_map_point(b, p)


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """``a`` after ``b``."""
    if a.alphabet != b.alphabet:
        raise InputError(f"alphabet mismatch composing {a.label} and {b.label}")
    expr = f"compose({a.expr}, {b.expr})" if a.expr and b.expr else None
    return Automorphism(
        compose_block_maps(a.forward, b.forward),
        compose_block_maps(b.inverse, a.inverse),
        f"{a.label}*{b.label}",
        expr,
    )


def memory_bound(a: Automorphism) -> tuple:
    return a.forward.memory, a.inverse.memory


# builtins --------------------------------------------------------------------


def _shift_block(k: int, alphabet: Alphabet) -> BlockMap:
    m = abs(k)
    return BlockMap(m, lambda w: w[m - k], alphabet)


def shift_map(k: int, alphabet: Alphabet) -> Automorphism:
    """``sigma**k`` with ``[sigma x]_n = x_{n-1}``; memory ``|k|`` both ways."""
    label = {0: "id", 1: "sigma"}.get(k, f"sigma^{k}")
    return Automorphism(_shift_block(k, alphabet), _shift_block(-k, alphabet), label, f"shift({k})")


def identity(alphabet: Alphabet) -> Automorphism:
    b = BlockMap(0, lambda w: w[0], alphabet)
    return Automorphism(b, b, "id", "identity")


def symbol_permutation(mapping: Mapping, alphabet: Alphabet, label: str = "perm") -> Automorphism:
    """Memory-0 relabelling of symbols (not an automorphism of every space)."""
    mapping = dict(mapping)
    if sorted(map(alphabet.index, mapping)) != list(range(len(alphabet))) or set(
        mapping.values()
    ) != set(alphabet):
        raise InputError("symbol permutation must be a bijection of the alphabet")
    back = {v: k for k, v in mapping.items()}
    return Automorphism(
        BlockMap(0, lambda w: mapping[w[0]], alphabet),
        BlockMap(0, lambda w: back[w[0]], alphabet),
        label,
    )


def swap(alphabet: Alphabet) -> Automorphism:
    """Exchange the two coordinates of a product alphabet ``B x B``."""
    for s in alphabet:
        if not (isinstance(s, tuple) and len(s) == 2 and (s[1], s[0]) in alphabet):
            raise InputError("swap needs a symmetric two-fold product alphabet")
    b = BlockMap(0, lambda w: (w[0][1], w[0][0]), alphabet)
    return Automorphism(b, b, "swap", "swap")


def power(a: Automorphism, n: int) -> Automorphism:
    if n == 0:
        return identity(a.alphabet)
    base = a if n > 0 else a.inverted()
    out = base
    for _ in range(abs(n) - 1):
        out = compose(out, base)
    return out


# verification ----------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    label: str
    space: str
    max_length: int
    checks: dict
    failures: tuple

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def render(self, limit: int = 20) -> str:
        from .symbolic import format_symbols

        lines = [
            f"automorphism {self.label} on {self.space}: "
            f"{'PASS' if self.passed else 'FAIL'} (verified to length {self.max_length})"
        ]
        for name, ok in self.checks.items():
            lines.append(f"  {name}: {'pass' if ok else 'FAIL'}")
        for check, word, image in self.failures[:limit]:
            lines.append(f"  failed {check}: {format_symbols(word)} -> {format_symbols(image)}")
        if len(self.failures) > limit:
            lines.append(f"  ... {len(self.failures) - limit} more failures")
        return "\n".join(lines)


def verify_automorphism(
    s: ShiftSpace, a: Automorphism, L: int, cap: EnumerationCap = DEFAULT_CAP
) -> VerificationReport:
    """Finite certificate that ``a`` restricts to an automorphism of ``s``.

    For every word of ``s`` of length at most ``L``: both block maps send it
    to words of ``s``, and each map undoes the other on the central part.
    """
    kf, ki = memory_bound(a)
    need = 2 * (kf + ki) + 1
    if L < need:
        raise InputError(f"verification length {L} is below 2*(k+k')+1 = {need}")
    checks = {
        "forward language": True,
        "inverse language": True,
        "inverse after forward": True,
        "forward after inverse": True,
    }
    failures = []

    def fail(check, word, image):
        checks[check] = False
        failures.append((check, word, image))

    for n in range(1, L + 1):
        for w in s.words(n, cap):
            if n >= 2 * kf + 1:
                img = apply_block_map_word(a.forward, w)
                if not s.contains_word(img):
                    fail("forward language", w, img)
            if n >= 2 * ki + 1:
                img = apply_block_map_word(a.inverse, w)
                if not s.contains_word(img):
                    fail("inverse language", w, img)
            if n >= need:
                centre = w[kf + ki : n - kf - ki]
                back = apply_block_map_word(a.inverse, apply_block_map_word(a.forward, w))
                if back != centre:
                    fail("inverse after forward", w, back)
                back = apply_block_map_word(a.forward, apply_block_map_word(a.inverse, w))
                if back != centre:
                    fail("forward after inverse", w, back)
    return VerificationReport(a.label, s.name or "space", L, checks, tuple(failures))
