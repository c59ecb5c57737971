"""The ``drift-spec`` text format: parse, resolve and export.

A spec starts with the header ``drift-spec 1``.  Every stanza begins with an
unindented header line and owns the indented lines below it; ``#`` starts a
comment.  Stanzas::

    space NAME = sunny-side-up | full-shift(SYMS) | fixed(SYM)
               | orbit-closure(SYMS)    (indented point literals)
               | automaton(SYMS)        (indented ``state -sym-> state``)
               | product(NAME, NAME) | product-with-s(NAME)
    family NAME on SPACE = sunny-side-up | product-with-s | product-with-s(FAMILY)
                         | pairs        (indented ``x ; y``)
    cocycle NAME = const INT
    cocycle NAME radius R [default INT]      (indented ``PATTERN -> INT``)
    automorphism NAME on SPACE = EXPR
    pairs NAME on SPACE                      (indented ``x ; y``)
    measure NAME on SPACE                    (indented ``WEIGHT POINT``)
    run NAME                                 (indented ``key = value``)

``EXPR`` is ``shift(INT)``, ``identity``, ``swap``, ``full-group-embed(COCYCLE)``,
``compose(EXPR, EXPR)``, ``inverse(EXPR)``, ``power(EXPR, INT)``, the name of an
automorphism on the same space, or ``blockmap`` followed by indented
``forward K`` / ``inverse K`` sections of ``PATTERN -> SYMBOL`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from .asymptotic import CalibratedPair
from .automorphisms import (
    Automorphism,
    BlockMap,
    compose,
    identity,
    power,
    shift_map,
    swap,
)
from .errors import InputError, SpecError
from .gallery import (
    BaseMeasure,
    OrbitCocycle,
    embed_full_group,
    fixed_point_space,
    full_shift,
    product_with_s,
    sunny_side_up,
)
from .measure import CAFamily, explicit_family
from .spaces import OrbitClosure, ProductShift, ShiftSpace, SoficShift
from .symbolic import Alphabet, format_point, format_symbol, format_symbols, parse_point, parse_symbol, parse_symbols

HEADER = "drift-spec 1"
NAME = r"[A-Za-z_][A-Za-z0-9_\-]*"

RUN_KEYS = {
    "space": str,
    "family": str,
    "automorphisms": "list",
    "pairs": str,
    "stages": int,
    "n-max": int,
    "cylinder-radius": int,
    "entropy-n": int,
    "entropy-threshold": float,
    "verify-length": int,
    "validate-radius": int,
    "pairs-radius": int,
    "max-ratio": float,
    "min-unique": float,
    "max-defect": float,
}


@dataclass(frozen=True)
class RunSpec:
    name: str
    space: str
    family: str
    automorphisms: tuple = ()
    pairs: str | None = None
    stages: int = 3
    n_max: int = 6
    cylinder_radius: int = 1
    entropy_n: int = 30
    entropy_threshold: float = 0.12
    verify_length: int | None = None
    validate_radius: int = 2
    pairs_radius: int = 1
    max_ratio: float | None = None
    min_unique: float | None = None
    max_defect: float | None = None


_RUN_DEFAULTS = RunSpec("", "", "")


@dataclass
class SpecFile:
    """Named objects in declaration order.  ``families``, ``automorphisms``,
    ``pair_lists`` and ``measures`` map a name to ``(space name, object)``."""

    spaces: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    cocycles: dict = field(default_factory=dict)
    automorphisms: dict = field(default_factory=dict)
    pair_lists: dict = field(default_factory=dict)
    measures: dict = field(default_factory=dict)
    runs: dict = field(default_factory=dict)

    def space(self, name: str) -> ShiftSpace:
        try:
            return self.spaces[name]
        except KeyError:
            raise SpecError(f"undefined space {name!r}") from None

    def run(self, name: str | None = None) -> RunSpec:
        if name is None:
            if not self.runs:
                raise SpecError("spec defines no runs")
            return next(iter(self.runs.values()))
        try:
            return self.runs[name]
        except KeyError:
            raise SpecError(f"undefined run {name!r}") from None


# lexing ----------------------------------------------------------------------


@dataclass
class _Line:
    number: int
    indent: int
    text: str


@dataclass
class _Stanza:
    head: _Line
    body: list


def _lines(text: str) -> list:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].rstrip()
        if stripped.strip():
            body = stripped.lstrip()
            out.append(_Line(i, len(stripped) - len(body), body))
    return out


def _stanzas(lines: list) -> list:
    out = []
    for ln in lines:
        if ln.indent == 0:
            out.append(_Stanza(ln, []))
        elif not out:
            raise SpecError("indented line outside any stanza", ln.number, ln.indent + 1)
        else:
            out[-1].body.append(ln)
    return out


def _fail(line: _Line, message: str, offset: int = 0):
    raise SpecError(message, line.number, line.indent + 1 + offset)


def _wrap(line: _Line, fn, *args):
    """Re-raise library input errors with the position of ``line``."""
    try:
        return fn(*args)
    except SpecError:
        raise
    except InputError as e:
        _fail(line, str(e))


# parsing ---------------------------------------------------------------------


def parse_spec(text: str) -> SpecFile:
    lines = _lines(text)
    if not lines or lines[0].text.strip() != HEADER or lines[0].indent:
        where = lines[0].number if lines else 1
        raise SpecError(f"expected header {HEADER!r}", where, 1)
    spec = SpecFile()
    for st in _stanzas(lines[1:]):
        keyword = st.head.text.split(None, 1)[0]
        handler = _HANDLERS.get(keyword)
        if handler is None:
            _fail(st.head, f"unknown stanza {keyword!r}")
        handler(spec, st)
    _check_runs(spec)
    return spec


def load_spec(path) -> SpecFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read spec {path}: {e.strerror}") from None
    return parse_spec(text)


def _header(st: _Stanza, pattern: str, usage: str):
    m = re.fullmatch(pattern, st.head.text.strip())
    if m is None:
        _fail(st.head, f"expected `{usage}`")
    return m


def _new_name(spec: SpecFile, table: dict, name: str, st: _Stanza):
    if name in table:
        _fail(st.head, f"duplicate definition of {name!r}")


def _no_body(st: _Stanza, what: str):
    if st.body:
        _fail(st.body[0], f"{what} takes no indented lines")


def _symbols(line: _Line, text: str) -> tuple:
    return _wrap(line, lambda: tuple(parse_symbol(t) for t in text.split(",")))


def _parse_space(spec: SpecFile, st: _Stanza):
    m = _header(st, rf"space\s+({NAME})\s*=\s*(.+)", "space NAME = DEFINITION")
    name, rhs = m[1], m[2].strip()
    _new_name(spec, spec.spaces, name, st)
    line = st.head
    if rhs == "sunny-side-up":
        _no_body(st, rhs)
        space = replace(sunny_side_up()[0], name=name)
    elif mm := re.fullmatch(r"full-shift\((.+)\)", rhs):
        _no_body(st, "full-shift")
        space = replace(_wrap(line, full_shift, _symbols(line, mm[1])), name=name)
    elif mm := re.fullmatch(r"fixed\((.+)\)", rhs):
        _no_body(st, "fixed")
        space = replace(_wrap(line, fixed_point_space, _wrap(line, parse_symbol, mm[1])), name=name)
    elif mm := re.fullmatch(r"orbit-closure\((.+)\)", rhs):
        alphabet = _wrap(line, Alphabet, _symbols(line, mm[1]))
        points = tuple(_wrap(b, parse_point, b.text) for b in st.body)
        if not points:
            _fail(line, "orbit-closure needs at least one indented point literal")
        space = _wrap(line, OrbitClosure, alphabet, points, name)
    elif mm := re.fullmatch(r"automaton\((.+)\)", rhs):
        alphabet = _wrap(line, Alphabet, _symbols(line, mm[1]))
        edges = []
        for b in st.body:
            e = re.fullmatch(rf"(\S+)\s+-(\S+)->\s+(\S+)", b.text.strip())
            if e is None:
                _fail(b, "expected `state -symbol-> state`")
            edges.append((e[1], _wrap(b, parse_symbol, e[2]), e[3]))
        space = _wrap(line, SoficShift, alphabet, tuple(edges), name)
    elif mm := re.fullmatch(rf"product\(\s*({NAME}(?:\s*,\s*{NAME})+)\s*\)", rhs):
        _no_body(st, "product")
        parts = tuple(_ref(spec.spaces, n.strip(), "space", line) for n in mm[1].split(","))
        space = _wrap(line, ProductShift, parts, name)
    elif mm := re.fullmatch(rf"product-with-s\(\s*({NAME})\s*\)", rhs):
        _no_body(st, "product-with-s")
        base = _ref(spec.spaces, mm[1], "space", line)
        space = replace(product_with_s(base)[0], name=name)
    else:
        _fail(line, f"unknown space definition {rhs!r}", line.text.index(rhs))
    spec.spaces[name] = space


def _ref(table: dict, name: str, kind: str, line: _Line):
    if name not in table:
        _fail(line, f"undefined {kind} {name!r}", max(line.text.find(name), 0))
    return table[name]


def _pair_lines(st: _Stanza, space: ShiftSpace) -> tuple:
    pairs = []
    for b in st.body:
        if ";" not in b.text:
            _fail(b, "expected `point ; point`")
        left, right = b.text.split(";", 1)
        x, y = _wrap(b, parse_point, left), _wrap(b, parse_point, right)
        for p in (x, y):
            if not space.contains_point(p):
                _fail(b, f"point {format_point(p)} is not in {space.name}")
        pairs.append(_wrap(b, CalibratedPair, x, y))
    return tuple(pairs)


def _parse_family(spec: SpecFile, st: _Stanza):
    m = _header(st, rf"family\s+({NAME})\s+on\s+({NAME})\s*=\s*(.+)", "family NAME on SPACE = DEFINITION")
    name, on, rhs = m[1], m[2], m[3].strip()
    _new_name(spec, spec.families, name, st)
    space = _ref(spec.spaces, on, "space", st.head)
    line = st.head
    if rhs == "sunny-side-up":
        _no_body(st, rhs)
        s, fam = sunny_side_up()
        if space != s:
            _fail(line, f"space {on!r} is not the sunny-side-up shift")
        family = fam
    elif mm := re.fullmatch(rf"product-with-s(?:\(\s*({NAME})\s*\))?", rhs):
        _no_body(st, "product-with-s")
        if not (isinstance(space, ProductShift) and len(space.components) == 2):
            _fail(line, f"space {on!r} is not a product with the sunny-side-up shift")
        base = space.components[0]
        base_family = None
        if mm[1]:
            base_on, base_family = _ref(spec.families, mm[1], "family", line)
            if base_family.space != base:
                _fail(line, f"family {mm[1]!r} does not describe the base of {on!r}")
        built_space, family = product_with_s(base, base_family)
        if built_space != space:
            _fail(line, f"space {on!r} is not a product with the sunny-side-up shift")
    elif rhs == "pairs":
        family = _wrap(line, explicit_family, space, _pair_lines(st, space), name)
    else:
        _fail(line, f"unknown family definition {rhs!r}", line.text.index(rhs))
    spec.families[name] = (on, family)


def _parse_cocycle(spec: SpecFile, st: _Stanza):
    text = st.head.text.strip()
    if m := re.fullmatch(rf"cocycle\s+({NAME})\s*=\s*const\s+([+-]?\d+)", text):
        _new_name(spec, spec.cocycles, m[1], st)
        _no_body(st, "a constant cocycle")
        spec.cocycles[m[1]] = OrbitCocycle.constant(int(m[2]), label=m[1])
        return
    m = _header(
        st, rf"cocycle\s+({NAME})\s+radius\s+(\d+)(?:\s+default\s+([+-]?\d+))?",
        "cocycle NAME radius R [default INT]` or `cocycle NAME = const INT",
    )
    name, radius = m[1], int(m[2])
    _new_name(spec, spec.cocycles, name, st)
    default = int(m[3]) if m[3] is not None else None
    table = {}
    for b in st.body:
        e = re.fullmatch(r"(.+?)\s*->\s*([+-]?\d+)", b.text.strip())
        if e is None:
            _fail(b, "expected `PATTERN -> INT`")
        pattern = _wrap(b, parse_symbols, e[1])
        if pattern in table:
            _fail(b, f"duplicate pattern {e[1]!r}")
        table[pattern] = int(e[2])
    spec.cocycles[name] = _wrap(st.head, OrbitCocycle.from_table, radius, table, default, name)


class _Expr:
    """Recursive-descent reader for automorphism expressions."""

    def __init__(self, spec, st, space, on, name):
        self.spec, self.st, self.space, self.on, self.name = spec, st, space, on, name
        self.text = st.head.text
        self.pos = self.text.index("=") + 1

    def fail(self, message):
        _fail(self.st.head, message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def token(self, pattern):
        self.skip()
        m = re.compile(pattern).match(self.text, self.pos)
        if m is None:
            return None
        self.pos = m.end()
        return m.group(0)

    def expect(self, literal):
        if self.token(re.escape(literal)) is None:
            self.fail(f"expected {literal!r}")

    def integer(self):
        t = self.token(r"[+-]?\d+")
        if t is None:
            self.fail("expected an integer")
        return int(t)

    def parse(self) -> Automorphism:
        a = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.fail(f"unexpected text {self.text[self.pos:]!r}")
        return a

    def expr(self) -> Automorphism:
        word = self.token(NAME)
        if word is None:
            self.fail("expected an automorphism expression")
        alphabet = self.space.alphabet
        line = self.st.head
        if word == "shift":
            self.expect("(")
            k = self.integer()
            self.expect(")")
            return shift_map(k, alphabet)
        if word == "identity":
            return identity(alphabet)
        if word == "swap":
            return _wrap(line, swap, alphabet)
        if word == "full-group-embed":
            self.expect("(")
            cname = self.token(NAME)
            coc = _ref(self.spec.cocycles, cname or "", "cocycle", line)
            self.expect(")")
            s, _ = sunny_side_up()
            if not (isinstance(self.space, ProductShift) and len(self.space.components) == 2
                    and self.space.components[1] == s):
                self.fail(f"space {self.on!r} is not a product with the sunny-side-up shift")
            return _wrap(line, embed_full_group, self.space.components[0], coc)
        if word in ("compose", "power", "inverse"):
            self.expect("(")
            a = self.expr()
            if word == "compose":
                self.expect(",")
                result = compose(a, self.expr())
            elif word == "power":
                self.expect(",")
                result = power(a, self.integer())
            else:
                result = a.inverted()
            self.expect(")")
            return result
        if word == "blockmap":
            return self._blockmap()
        on, a = _ref(self.spec.automorphisms, word, "automorphism", line)
        if self.spec.spaces[on] != self.space:
            self.fail(f"automorphism {word!r} acts on {on!r}, not {self.on!r}")
        return a

    def _blockmap(self) -> Automorphism:
        sections = {}
        current = None
        for b in self.st.body:
            m = re.fullmatch(r"(forward|inverse)\s+(\d+)", b.text.strip())
            if m:
                if m[1] in sections:
                    _fail(b, f"duplicate {m[1]} section")
                current = sections[m[1]] = (int(m[2]), {}, b)
                continue
            if current is None:
                _fail(b, "expected `forward K` or `inverse K`")
            e = re.fullmatch(r"(.+?)\s*->\s*(\S+)", b.text.strip())
            if e is None:
                _fail(b, "expected `PATTERN -> SYMBOL`")
            current[1][_wrap(b, parse_symbols, e[1])] = _wrap(b, parse_symbol, e[2])
        for part in ("forward", "inverse"):
            if part not in sections:
                self.fail(f"blockmap needs a {part} section")
        maps = {
            part: _wrap(line, BlockMap.from_table, k, table, self.space.alphabet)
            for part, (k, table, line) in sections.items()
        }
        return Automorphism(maps["forward"], maps["inverse"], self.name, None)


def _parse_automorphism(spec: SpecFile, st: _Stanza):
    m = _header(st, rf"automorphism\s+({NAME})\s+on\s+({NAME})\s*=\s*(.+)", "automorphism NAME on SPACE = EXPR")
    name, on = m[1], m[2]
    _new_name(spec, spec.automorphisms, name, st)
    space = _ref(spec.spaces, on, "space", st.head)
    parser = _Expr(spec, st, space, on, name)
    a = parser.parse()
    if "blockmap" not in m[3]:
        _no_body(st, "this automorphism expression")
    spec.automorphisms[name] = (on, replace(a, label=name))


def _parse_pairs(spec: SpecFile, st: _Stanza):
    m = _header(st, rf"pairs\s+({NAME})\s+on\s+({NAME})", "pairs NAME on SPACE")
    _new_name(spec, spec.pair_lists, m[1], st)
    space = _ref(spec.spaces, m[2], "space", st.head)
    spec.pair_lists[m[1]] = (m[2], _pair_lines(st, space))


def _parse_measure(spec: SpecFile, st: _Stanza):
    m = _header(st, rf"measure\s+({NAME})\s+on\s+({NAME})", "measure NAME on SPACE")
    _new_name(spec, spec.measures, m[1], st)
    space = _ref(spec.spaces, m[2], "space", st.head)
    support, weights = [], []
    for b in st.body:
        e = re.fullmatch(r"(\S+)\s+(.+)", b.text.strip())
        if e is None:
            _fail(b, "expected `WEIGHT POINT`")
        try:
            w = Fraction(e[1])
        except (ValueError, ZeroDivisionError):
            _fail(b, f"bad weight {e[1]!r}")
        p = _wrap(b, parse_point, e[2])
        if not space.contains_point(p):
            _fail(b, f"point {e[2]} is not in {m[2]}")
        support.append(p)
        weights.append(w)
    spec.measures[m[1]] = (m[2], _wrap(st.head, BaseMeasure, tuple(support), tuple(weights)))


def _parse_run(spec: SpecFile, st: _Stanza):
    m = _header(st, rf"run\s+({NAME})", "run NAME")
    _new_name(spec, spec.runs, m[1], st)
    values = {}
    lines = {}
    for b in st.body:
        e = re.fullmatch(r"([a-z\-]+)\s*=\s*(.*)", b.text.strip())
        if e is None:
            _fail(b, "expected `key = value`")
        key, raw = e[1], e[2].strip()
        if key not in RUN_KEYS:
            _fail(b, f"unknown run key {key!r}")
        if key in values:
            _fail(b, f"duplicate run key {key!r}")
        kind = RUN_KEYS[key]
        try:
            if kind == "list":
                value = tuple(t.strip() for t in raw.split(",") if t.strip())
            else:
                value = kind(raw)
        except ValueError:
            _fail(b, f"bad value {raw!r} for {key!r}", b.text.index(raw))
        if kind in (int, float) and value <= 0:
            _fail(b, f"{key} must be positive", b.text.index(raw))
        values[key.replace("-", "_")] = value
        lines[key] = b
    for key in ("space", "family"):
        if key not in values:
            _fail(st.head, f"run {m[1]!r} needs a {key!r} key")
    run = RunSpec(m[1], **values)
    object.__setattr__(run, "_lines", lines)
    spec.runs[m[1]] = run


def _check_runs(spec: SpecFile):
    for run in spec.runs.values():
        lines = getattr(run, "_lines", {})

        def where(key):
            ln = lines.get(key)
            return (ln.number, ln.indent + 1) if ln else (None, None)

        if run.space not in spec.spaces:
            raise SpecError(f"run {run.name!r}: undefined space {run.space!r}", *where("space"))
        if run.family not in spec.families:
            raise SpecError(f"run {run.name!r}: undefined family {run.family!r}", *where("family"))
        if spec.families[run.family][1].space != spec.spaces[run.space]:
            raise SpecError(f"run {run.name!r}: family {run.family!r} is not on {run.space!r}", *where("family"))
        for a in run.automorphisms:
            if a not in spec.automorphisms:
                raise SpecError(f"run {run.name!r}: undefined automorphism {a!r}", *where("automorphisms"))
            if spec.spaces[spec.automorphisms[a][0]] != spec.spaces[run.space]:
                raise SpecError(f"run {run.name!r}: automorphism {a!r} is not on {run.space!r}", *where("automorphisms"))
        if run.pairs is not None and run.pairs not in spec.pair_lists:
            raise SpecError(f"run {run.name!r}: undefined pairs {run.pairs!r}", *where("pairs"))


_HANDLERS = {
    "space": _parse_space,
    "family": _parse_family,
    "cocycle": _parse_cocycle,
    "automorphism": _parse_automorphism,
    "pairs": _parse_pairs,
    "measure": _parse_measure,
    "run": _parse_run,
}


# export ----------------------------------------------------------------------


def _syms(alphabet: Alphabet) -> str:
    return ",".join(format_symbol(s) for s in alphabet)


def format_space(name: str, space: ShiftSpace, known: dict) -> list:
    """Stanza lines for ``space``; ``known`` maps earlier names to spaces."""

    def ref(s):
        for n, t in known.items():
            if t == s:
                return n
        raise InputError(f"component {s.name or s!r} must be exported before {name!r}")

    s_space, _ = sunny_side_up()
    if space == s_space:
        return [f"space {name} = sunny-side-up"]
    if isinstance(space, ProductShift):
        if len(space.components) == 2 and space.components[1] == s_space:
            return [f"space {name} = product-with-s({ref(space.components[0])})"]
        return [f"space {name} = product({', '.join(ref(c) for c in space.components)})"]
    if isinstance(space, SoficShift):
        if space == full_shift(space.alphabet.symbols):
            return [f"space {name} = full-shift({_syms(space.alphabet)})"]
        return [f"space {name} = automaton({_syms(space.alphabet)})"] + [
            f"  {q} -{format_symbol(a)}-> {r}" for q, a, r in space.edges
        ]
    if isinstance(space, OrbitClosure):
        if len(space.alphabet) == 1 and space == fixed_point_space(space.alphabet.symbols[0]):
            return [f"space {name} = fixed({format_symbol(space.alphabet.symbols[0])})"]
        return [f"space {name} = orbit-closure({_syms(space.alphabet)})"] + [
            f"  {format_point(g)}" for g in space.generators
        ]
    raise InputError(f"no spec form for space {name!r}")


def format_family(name: str, on: str, family: CAFamily, families: dict) -> list:
    d = family.descriptor
    if d == ("sunny-side-up",):
        return [f"family {name} on {on} = sunny-side-up"]
    if d[0] == "product-with-s":
        if d[2] is None:
            return [f"family {name} on {on} = product-with-s"]
        for n, (_, f) in families.items():
            if f.descriptor == d[2]:
                return [f"family {name} on {on} = product-with-s({n})"]
        raise InputError(f"base family of {name!r} must be exported first")
    if d[0] == "pairs":
        return [f"family {name} on {on} = pairs"] + [f"  {p}" for p in d[1]]
    raise InputError(f"no spec form for family {name!r}")


def format_cocycle(name: str, c: OrbitCocycle) -> list:
    if c.table is None:
        raise InputError(f"cocycle {name!r} has no table")
    if c.constant_value is not None:
        return [f"cocycle {name} = const {c.constant_value}"]
    entries, default = c.table
    head = f"cocycle {name} radius {c.radius}" + (f" default {default}" if default is not None else "")
    return [head] + [f"  {format_symbols(k)} -> {v}" for k, v in entries]


def format_automorphism(name: str, on: str, a: Automorphism) -> list:
    if a.expr is not None:
        return [f"automorphism {name} on {on} = {a.expr}"]
    lines = [f"automorphism {name} on {on} = blockmap"]
    for part, b in (("forward", a.forward), ("inverse", a.inverse)):
        lines.append(f"  {part} {b.memory}")
        lines += [f"    {format_symbols(k)} -> {format_symbol(v)}" for k, v in b.table().items()]
    return lines


def _fmt_number(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def format_run(run: RunSpec) -> list:
    lines = [f"run {run.name}"]
    for key in RUN_KEYS:
        attr = key.replace("-", "_")
        value = getattr(run, attr)
        if key not in ("space", "family") and value == getattr(_RUN_DEFAULTS, attr):
            continue
        if value is None:
            continue
        text = ", ".join(value) if isinstance(value, tuple) else _fmt_number(value)
        lines.append(f"  {key} = {text}")
    return lines


def format_spec(spec: SpecFile) -> str:
    out = [HEADER]
    sections = []
    known = {}
    for name, space in spec.spaces.items():
        sections.append(format_space(name, space, known))
        known[name] = space
    done = {}
    for name, (on, f) in spec.families.items():
        sections.append(format_family(name, on, f, done))
        done[name] = (on, f)
    for name, c in spec.cocycles.items():
        sections.append(format_cocycle(name, c))
    for name, (on, a) in spec.automorphisms.items():
        sections.append(format_automorphism(name, on, a))
    for name, (on, pairs) in spec.pair_lists.items():
        sections.append([f"pairs {name} on {on}"] + [f"  {p}" for p in pairs])
    for name, (on, mu) in spec.measures.items():
        sections.append([f"measure {name} on {on}"] + [
            f"  {w} {format_point(p)}" for p, w in zip(mu.support, mu.weights)
        ])
    for run in spec.runs.values():
        sections.append(format_run(run))
    for s in sections:
        out.append("")
        out.extend(s)
    return "\n".join(out) + "\n"


# gallery ---------------------------------------------------------------------


def gallery_spec() -> SpecFile:
    """Every gallery object, named, with the passing runs."""
    from .gallery import flip_cocycle, period_two_measure, period_two_orbit, s_squared, transposition_cocycle

    spec = SpecFile()
    s, s_fam = sunny_side_up()
    p = period_two_orbit()
    ss, ss_fam = s_squared()
    ps, ps_fam = product_with_s(p)
    spec.spaces.update(S=s, P=p, SS=replace(ss, name="SS"), PS=replace(ps, name="PS"))
    spec.families.update(fS=("S", s_fam), fSS=("SS", ss_fam), fPS=("PS", ps_fam))
    one, zero = OrbitCocycle.constant(1, "one"), OrbitCocycle.constant(0, "zero")
    flip, transpose = flip_cocycle(), transposition_cocycle()
    spec.cocycles.update(one=one, zero=zero, flip=flip, transpose=transpose)

    def add(name, on, a):
        spec.automorphisms[name] = (on, replace(a, label=name))

    for k, name in ((1, "sigma"), (-1, "sigma-inv"), (2, "sigma2"), (-2, "sigma2-inv")):
        add(name, "S", shift_map(k, s.alphabet))
    add("id", "S", identity(s.alphabet))
    add("ss-sigma", "SS", shift_map(1, ss.alphabet))
    add("ss-swap", "SS", swap(ss.alphabet))
    add("ss-one", "SS", embed_full_group(s, one))
    add("ss-transpose", "SS", embed_full_group(s, transpose))
    add("ps-sigma", "PS", shift_map(1, ps.alphabet))
    for c in (one, zero, flip):
        add(f"ps-{c.label}", "PS", embed_full_group(p, c))
    spec.measures["mu"] = ("P", period_two_measure())
    spec.runs["sunny"] = RunSpec(
        "sunny", "S", "fS", ("sigma", "sigma-inv", "sigma2", "sigma2-inv", "id"),
        stages=3, n_max=10, cylinder_radius=2,
    )
    spec.runs["s-squared"] = RunSpec(
        "s-squared", "SS", "fSS", ("ss-sigma", "ss-swap", "ss-one", "ss-transpose"),
        stages=3, n_max=5, cylinder_radius=1, pairs_radius=1,
    )
    spec.runs["p-times-s"] = RunSpec(
        "p-times-s", "PS", "fPS", ("ps-sigma", "ps-one", "ps-zero", "ps-flip"),
        stages=3, n_max=6, cylinder_radius=1, entropy_n=12,
    )
    return spec


def gallery_spec_text() -> str:
    return format_spec(gallery_spec())
