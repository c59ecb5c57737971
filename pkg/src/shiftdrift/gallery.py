"""Worked examples: sunny-side-up, products with it, and full-group embeddings.

The sunny-side-up shift ``S`` holds the points with at most one ``1``.  Its
calibrated pairs are ``(x, z)``, ``(z, x)`` and, for every ``i >= 1``,
``(x, sigma^i x)`` and ``(sigma^i x, x)``, where ``x`` has its ``1`` at the
origin and ``z`` is all zeros.

An orbit cocycle ``N`` on a base space defines ``phi(y) = sigma^-N(y) y``:
with ``[sigma x]_n = x_{n-1}``, a positive ``N`` reads the coordinates
further right.  When ``phi`` is a bijection it embeds into
``Aut(base x S)`` by moving the ``1`` of the ``S`` coordinate: the marker
at position ``m`` goes to ``m + N(sigma^-m y)``, so the drift on the pair
``((y, marker), (y, zero))`` is ``N(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .asymptotic import CalibratedPair, drift_cocycle
from .automorphisms import Automorphism, BlockMap, shift_map, swap, verify_automorphism
from .errors import InputError, InvalidCocycleError
from .measure import (
    CAFamily,
    Calibrated,
    Delayed,
    Diagonal,
    ListSchema,
    ProductSchema,
)
from .spaces import OrbitClosure, ProductShift, ShiftSpace, SoficShift
from .symbolic import Alphabet, Point, parse_point, shift_point, window

BINARY = Alphabet(("0", "1"))
MARKER = parse_point("|0^omega <1@0> |0^omega")
ZERO = Point.constant("0")


def marker_at(i: int) -> Point:
    """``sigma^i`` of the marker: the single ``1`` sits at ``i``."""
    return shift_point(MARKER, i)


# spaces ----------------------------------------------------------------------


def _s_family(space: ShiftSpace) -> CAFamily:
    a = space.alphabet
    core = ListSchema.fixed("marker/zero", a, [CalibratedPair(MARKER, ZERO), CalibratedPair(ZERO, MARKER)])
    lead = ListSchema(
        "marker/later marker", a,
        lambda n: [CalibratedPair(MARKER, marker_at(i)) for i in range(1, n + 1)],
        ("marker-lead",),
    )
    trail = ListSchema(
        "later marker/marker", a,
        lambda n: [CalibratedPair(marker_at(i), MARKER) for i in range(1, n + 1)],
        ("marker-trail",),
    )
    return CAFamily(space, [core, lead, trail], "sunny-side-up", disjoint=True, descriptor=("sunny-side-up",))


@lru_cache(maxsize=None)
def sunny_side_up() -> tuple:
    """``S`` as the orbit closure of the marker, with its complete pair family."""
    s = OrbitClosure(BINARY, (MARKER,), name="S")
    return s, _s_family(s)


def period_two_orbit() -> ShiftSpace:
    return OrbitClosure(BINARY, (Point.periodic(("1", "0")),), name="P")


def full_shift(symbols: Sequence = ("0", "1")) -> ShiftSpace:
    a = Alphabet(tuple(symbols))
    return SoficShift(a, tuple(("q", s, "q") for s in a), name=f"full-shift({','.join(map(str, a))})")


def fixed_point_space(symbol="0") -> ShiftSpace:
    return OrbitClosure(Alphabet((symbol,)), (Point.constant(symbol),), name=f"fixed({symbol})")


def product_with_s(base: ShiftSpace, base_family: CAFamily | None = None) -> tuple:
    """``base x S`` and its calibrated pairs, split by which coordinate differs first.

    * base coordinates equal, ``S`` coordinates form a calibrated pair;
    * and, when ``base_family`` is given, the three cases where the base
      coordinates differ: ``S`` equal, ``S`` first differing at ``j >= 0``,
      or ``S`` calibrated with the base first differing at ``j >= 1``.
    """
    s, s_fam = sunny_side_up()
    name = f"{base.name or 'base'}xS"
    space = ProductShift((base, s), name=name)
    schemas = [ProductSchema("base equal", Diagonal(base), Calibrated(s_fam))]
    if base_family is not None:
        if base_family.space != base:
            raise InputError("base family does not describe the base space")
        schemas += [
            ProductSchema("S equal", Calibrated(base_family), Diagonal(s)),
            ProductSchema("S later", Calibrated(base_family), Delayed(s_fam, 0)),
            ProductSchema("base later", Delayed(base_family, 1), Calibrated(s_fam)),
        ]
    descriptor = ("product-with-s", base, base_family.descriptor if base_family else None)
    return space, CAFamily(space, schemas, name, disjoint=True, descriptor=descriptor)


def s_squared() -> tuple:
    s, fam = sunny_side_up()
    return product_with_s(s, fam)


# orbit cocycles --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbitCocycle:
    """Integer-valued rule on centred base windows of radius ``radius``."""

    radius: int
    rule: Callable[[tuple], int]
    label: str = ""
    table: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.radius < 0:
            raise InputError(f"cocycle radius must be non-negative, got {self.radius}")

    @classmethod
    def constant(cls, value: int, label: str = "") -> "OrbitCocycle":
        value = int(value)
        return cls(0, lambda w: value, label or f"const({value})", ("const", value))

    @classmethod
    def from_table(cls, radius: int, table: Mapping, default: int | None = None, label: str = "") -> "OrbitCocycle":
        """Lookup on windows; ``default`` covers windows absent from ``table``."""
        table = {tuple(k): int(v) for k, v in table.items()}
        for k in table:
            if len(k) != 2 * radius + 1:
                raise InputError(f"cocycle pattern {k!r} does not have length {2 * radius + 1}")

        def rule(w):
            if w in table:
                return table[w]
            if default is None:
                raise InvalidCocycleError(f"cocycle is undefined on window {w!r}")
            return default

        frozen = (tuple(sorted(table.items())), default)
        return cls(radius, rule, label, frozen)

    def __eq__(self, other):
        if not isinstance(other, OrbitCocycle):
            return NotImplemented
        if self.table is None or other.table is None:
            return self is other
        return (self.radius, self.table) == (other.radius, other.table)

    def __hash__(self):
        return hash((self.radius, self.table)) if self.table is not None else id(self)

    @property
    def constant_value(self) -> int | None:
        if self.table is not None and self.table[0] == "const":
            return self.table[1]
        return None

    def __call__(self, y: Point) -> int:
        return self.rule(window(y, -self.radius, self.radius))

    def on_window(self, w: Sequence) -> int:
        return self.rule(tuple(w))

    def bound(self, base: ShiftSpace) -> int:
        """``max |N|`` over the base language."""
        return max(abs(self.rule(w)) for w in base.words(2 * self.radius + 1))

    def orbit_map(self, y: Point) -> Point:
        """``sigma^-N(y) y``."""
        return shift_point(y, -self(y))


def flip_cocycle(label: str = "flip") -> OrbitCocycle:
    """``+1`` where the origin reads ``0``, ``-1`` where it reads ``1``."""
    return OrbitCocycle.from_table(0, {("0",): 1, ("1",): -1}, label=label)


def transposition_cocycle(label: str = "transpose") -> OrbitCocycle:
    """On ``S``: swap the marker positions 0 and 1, fix everything else."""
    return OrbitCocycle.from_table(
        1, {("0", "1", "0"): -1, ("0", "0", "1"): 1}, default=0, label=label
    )


def compose_cocycles(outer: OrbitCocycle, inner: OrbitCocycle, base: ShiftSpace) -> OrbitCocycle:
    """Cocycle of ``phi_outer`` after ``phi_inner``: ``N(y) = N_in(y) + N_out(sigma^-N_in(y) y)``."""
    k = inner.bound(base)
    r = inner.radius + k + outer.radius
    ri, ro = inner.radius, outer.radius

    def rule(w):
        n = inner.on_window(w[r - ri : r + ri + 1])
        # window of sigma^-n y around 0 is the window of y around n
        return n + outer.on_window(w[r + n - ro : r + n + ro + 1])

    return OrbitCocycle(r, rule, f"{outer.label}*{inner.label}")


def check_bijection(base: ShiftSpace, n: OrbitCocycle, sample_radius: int = 8) -> None:
    """Every sample point must have exactly one preimage under ``phi``.

    Preimages of ``q`` are the points ``sigma^d q`` with ``N(sigma^d q) = d``
    and ``|d| <= max |N|``, so the count is exact at each sample point.
    """
    k = n.bound(base)
    for q in base.sample_points(sample_radius):
        hits = [d for d in range(-k, k + 1) if n(shift_point(q, d)) == d]
        if len(hits) != 1:
            raise InvalidCocycleError(
                f"{n.label or 'cocycle'}: point {q!r} has {len(hits)} preimages (shifts {hits})"
            )
        if not base.contains_point(n.orbit_map(q)):
            raise InvalidCocycleError(f"{n.label or 'cocycle'} leaves the base at {q!r}")


def embed_full_group(
    base: ShiftSpace, n: OrbitCocycle, verify_length: int | None = None, label: str = ""
) -> Automorphism:
    """The automorphism of ``base x S`` moving the marker by ``N``.

    Both block maps have memory ``radius(N) + max|N|``.  The forward map
    writes a ``1`` at ``j`` when some marker at ``j - d`` carries ``N = d``;
    the inverse reads the marker at ``m + N(sigma^-m y)``.
    """
    check_bijection(base, n)
    s, _ = sunny_side_up()
    space = ProductShift((base, s), name=f"{base.name or 'base'}xS")
    alphabet = space.alphabet
    K = n.bound(base)
    r = n.radius
    k = r + K

    def base_window(w, centre):
        return tuple(c[0] for c in w[centre - r : centre + r + 1])

    def forward(w):
        hit = any(w[k - d][1] == "1" and n.on_window(base_window(w, k - d)) == d for d in range(-K, K + 1))
        return (w[k][0], "1" if hit else "0")

    def inverse(w):
        d = n.on_window(base_window(w, k))
        return (w[k][0], w[k + d][1])

    label = label or (f"embed({n.label})" if n.label else "embed")
    expr = f"full-group-embed({n.label})" if n.label else None
    a = Automorphism(BlockMap(k, forward, alphabet), BlockMap(k, inverse, alphabet), label, expr)
    report = verify_automorphism(space, a, verify_length or 4 * k + 1)
    if not report.passed:
        raise InvalidCocycleError(report.render())
    return a


# measures on the base --------------------------------------------------------


@dataclass(frozen=True)
class BaseMeasure:
    """Finitely supported shift-invariant probability measure on a base space."""

    support: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if len(self.support) != len(self.weights) or not self.support:
            raise InputError("support and weights must be non-empty and of equal length")
        if sum(self.weights) != 1:
            raise InputError(f"weights sum to {sum(self.weights)}, not 1")
        mass = dict(zip(self.support, self.weights))
        if len(mass) != len(self.support):
            raise InputError("support points must be distinct")
        for p, w in mass.items():
            if mass.get(shift_point(p, 1)) != w:
                raise InputError(f"measure is not shift-invariant at {p!r}")

    @classmethod
    def uniform(cls, points: Sequence[Point]) -> "BaseMeasure":
        points = tuple(points)
        return cls(points, (Fraction(1, len(points)),) * len(points))


def orbit_cocycle_expectation(mu: BaseMeasure, n: OrbitCocycle) -> Fraction:
    return sum((w * n(y) for y, w in zip(mu.support, mu.weights)), Fraction(0))


def schema_pair(y: Point) -> CalibratedPair:
    """``((y, marker), (y, zero))``."""
    return CalibratedPair(Point.zip(y, MARKER), Point.zip(y, ZERO))


def full_group_drift(mu: BaseMeasure, a: Automorphism) -> Fraction:
    """``mu``-average of the drift of ``a`` on the pairs ``((y, marker), (y, zero))``."""
    return sum((w * drift_cocycle(a, schema_pair(y)) for y, w in zip(mu.support, mu.weights)), Fraction(0))


def period_two_measure() -> BaseMeasure:
    p = period_two_orbit()
    return BaseMeasure.uniform(p.sample_points(0))


# registry --------------------------------------------------------------------


def gallery_automorphisms(name: str) -> dict:
    """The automorphism test matrix for a gallery space, keyed by label."""
    if name == "S":
        s, _ = sunny_side_up()
        return {a.label: a for a in (shift_map(k, s.alphabet) for k in (1, -1, 2, -2, 0))}
    if name == "SxS":
        s, _ = sunny_side_up()
        space, _ = s_squared()
        out = {a.label: a for a in (shift_map(k, space.alphabet) for k in (1, -1, 2, -2, 0))}
        out["swap"] = swap(space.alphabet)
        for c in (OrbitCocycle.constant(1), transposition_cocycle()):
            a = embed_full_group(s, c)
            out[a.label] = a
        return out
    if name == "PxS":
        p = period_two_orbit()
        space, _ = product_with_s(p)
        out = {a.label: a for a in (shift_map(k, space.alphabet) for k in (1, -1, 2, -2, 0))}
        for c in (OrbitCocycle.constant(1), flip_cocycle()):
            a = embed_full_group(p, c)
            out[a.label] = a
        return out
    raise InputError(f"unknown gallery space {name!r}")


def gallery_families() -> dict:
    """Named (space, family) pairs."""
    return {
        "S": sunny_side_up(),
        "SxS": s_squared(),
        "PxS": product_with_s(period_two_orbit()),
    }
