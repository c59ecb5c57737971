"""Command-line front end.

Exit codes: 0 pass, 1 assertion failure or refusal, 2 input error,
3 resource cap.  Output contains nothing run-dependent, so repeated runs on
the same spec are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .asymptotic import act, cocycle_bound, drift_cocycle, locality_radius
from .automorphisms import compose, memory_bound, verify_automorphism
from .drift import defect_budget, theorem_pipeline
from .errors import InputError, ShiftDriftError
from .measure import empirical_measure, half_cylinder, invariance_defect, representatives, validate_family
from .spaces import complexity_report, infinite_shift_guard, zero_entropy_certificate
from .specfile import SpecFile, gallery_spec, gallery_spec_text, load_spec, parse_spec
from .symbolic import format_symbols


def fmt(value) -> str:
    """Whole rationals print as integers, others with six decimals."""
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{float(value):.6f}"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


@dataclass
class Table:
    title: str
    header: tuple
    rows: list = field(default_factory=list)

    def add(self, *values):
        self.rows.append(tuple(fmt(v) for v in values))


@dataclass
class RunReport:
    command: str
    tables: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def render(self, style: str) -> str:
        out = io.StringIO()
        for t in self.tables:
            if style == "csv":
                out.write(f"# {t.title}\n")
                w = csv.writer(out, lineterminator="\n")
                w.writerow(t.header)
                w.writerows(t.rows)
            else:
                out.write(f"{t.title}\n")
                cols = [t.header] + t.rows
                widths = [max(len(str(r[i])) for r in cols) for i in range(len(t.header))]
                for r in cols:
                    out.write("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
            out.write("\n")
        for n in self.notes:
            out.write(f"{'# ' if style == 'csv' else ''}{n}\n")
        for f in self.failures:
            out.write(f"{'# ' if style == 'csv' else ''}FAIL: {f}\n")
        out.write(f"{'# ' if style == 'csv' else ''}{'FAIL' if self.failures else 'PASS'}\n")
        return out.getvalue()


# commands --------------------------------------------------------------------


def _runs(spec: SpecFile, name: str | None):
    return [spec.run(name)] if name else list(spec.runs.values())


def _overrides(run, args):
    changes = {}
    if getattr(args, "stages", None) is not None:
        changes["stages"] = args.stages
    if getattr(args, "n_max", None) is not None:
        changes["n_max"] = args.n_max
    if getattr(args, "entropy_threshold", None) is not None:
        changes["entropy_threshold"] = args.entropy_threshold
    return replace(run, **changes) if changes else run


def cmd_validate(spec: SpecFile, args) -> RunReport:
    report = RunReport("validate")
    lengths = {}
    for run in spec.runs.values():
        for a in run.automorphisms:
            if run.verify_length:
                lengths[a] = max(lengths.get(a, 0), run.verify_length)
    autos = Table("automorphisms", ("automorphism", "space", "length", "result"))
    for name, (on, a) in spec.automorphisms.items():
        kf, ki = memory_bound(a)
        L = lengths.get(name, 2 * (kf + ki) + 3)
        r = verify_automorphism(spec.spaces[on], a, L)
        autos.add(name, on, L, "pass" if r.passed else "FAIL")
        if not r.passed:
            report.failures.append(f"automorphism {name} on {on}")
            report.notes.extend(r.render().splitlines())
    report.tables.append(autos)

    guards = Table("spaces", ("space", "check", "result", "detail"))
    families = Table("families", ("family", "radius", "size", "found", "missing", "spurious", "result"))
    seen_spaces, seen_families = set(), set()
    for run in _runs(spec, getattr(args, "run", None)):
        run = _overrides(run, args)
        if run.space not in seen_spaces:
            seen_spaces.add(run.space)
            space = spec.spaces[run.space]
            g = infinite_shift_guard(space)
            guards.add(run.space, "infinite", "pass" if g.passed else "FAIL", g.reason)
            c = zero_entropy_certificate(space, run.entropy_n, run.entropy_threshold)
            guards.add(run.space, "zero entropy", "pass" if c.passed else "FAIL", c.describe())
            if not g.passed:
                report.failures.append(f"space {run.space}: {g.reason}")
            if not c.passed:
                report.failures.append(f"space {run.space}: {c.describe()}")
        if run.family not in seen_families:
            seen_families.add(run.family)
            fam = spec.families[run.family][1]
            for n in range(0, run.validate_radius + 1):
                chk = validate_family(fam, n)
                families.add(run.family, n, chk.family_size, chk.found_size, len(chk.missing),
                             len(chk.spurious), "pass" if chk.passed else "FAIL")
                if not chk.passed:
                    report.failures.append(f"family {run.family} incomplete at radius {n}")
                    for w in chk.missing[:10]:
                        report.notes.append(f"missing at radius {n}: {format_symbols(w.w1)} ; {format_symbols(w.w2)}")
    report.tables += [guards, families]
    return report


def cmd_complexity(spec: SpecFile, args) -> RunReport:
    report = RunReport("complexity")
    space = spec.space(args.space)
    rep = complexity_report(space, args.n_max)
    t = Table(f"complexity of {args.space}", ("n", "P(n)", "entropy_estimate"))
    for n, count in rep.counts.items():
        t.add(n, count, rep.entropy_estimates[n])
    report.tables.append(t)
    return report


def _pairs_for(spec: SpecFile, run):
    if run.pairs:
        return list(spec.pair_lists[run.pairs][1])
    return representatives(spec.families[run.family][1], run.pairs_radius)


def cmd_cocycle(spec: SpecFile, args) -> RunReport:
    report = RunReport("cocycle")
    for run in _runs(spec, args.run):
        autos = {n: spec.automorphisms[n][1] for n in run.automorphisms}
        pairs = _pairs_for(spec, run)
        values = Table(f"cocycle values ({run.name})", ("automorphism", "pair", "c", "B"))
        checks = Table(f"cocycle relation ({run.name})", ("a", "b", "pairs", "relation", "action"))
        for name, a in autos.items():
            B = cocycle_bound(a)
            for p in pairs:
                c = drift_cocycle(a, p)
                values.add(name, str(p), c, B)
                if abs(c) > B:
                    report.failures.append(f"{run.name}: |c({name}, {p})| = {abs(c)} exceeds {B}")
        for na, a in autos.items():
            for nb, b in autos.items():
                ab = compose(a, b)
                rel = hom = 0
                for p in pairs:
                    bp = act(b, p)
                    if drift_cocycle(ab, p) != drift_cocycle(a, bp) + drift_cocycle(b, p):
                        rel += 1
                    if act(a, bp) != act(ab, p):
                        hom += 1
                checks.add(na, nb, len(pairs), "pass" if not rel else f"FAIL ({rel})", "pass" if not hom else f"FAIL ({hom})")
                if rel or hom:
                    report.failures.append(f"{run.name}: relation fails for ({na}, {nb}) on {max(rel, hom)} pairs")
        report.tables += [values, checks]
    return report


def cmd_measure(spec: SpecFile, args) -> RunReport:
    report = RunReport("measure")
    for run in _runs(spec, args.run):
        run = _overrides(run, args)
        fam = spec.families[run.family][1]
        autos = {n: spec.automorphisms[n][1] for n in run.automorphisms}
        stages = Table(f"stages ({run.name})", ("m", "n_m", "W_size", "ratio", "unique_fraction"))
        defects = Table(f"invariance defects ({run.name})",
                        ("m", "automorphism", "cylinder_radius", "defect", "budget", "within_budget"))
        cylinder = half_cylinder(fam, run.cylinder_radius)
        for m in range(1, run.stages + 1):
            nu = empirical_measure(fam, m, run.n_max)
            stages.add(m, nu.radius, len(nu.support), nu.ratio, nu.unique_fraction)
            if nu.total_mass != 1:
                report.failures.append(f"{run.name}: stage {m} mass {nu.total_mass}")
            for name, a in autos.items():
                budget = defect_budget(nu, a)
                if cylinder.radius <= nu.radius - locality_radius(a):
                    d = invariance_defect(nu, a, cylinder)
                    defects.add(m, name, cylinder.radius, d, budget, d <= budget)
                else:
                    defects.add(m, name, cylinder.radius, None, budget, None)
        report.tables += [stages, defects]
    return report


def cmd_drift(spec: SpecFile, args) -> RunReport:
    report = RunReport("drift")
    for run in _runs(spec, args.run):
        run = _overrides(run, args)
        autos = {n: spec.automorphisms[n][1] for n in run.automorphisms}
        try:
            r = theorem_pipeline(
                spec.spaces[run.space], spec.families[run.family][1], autos, run.stages, run.n_max,
                entropy_n=run.entropy_n, entropy_threshold=run.entropy_threshold,
                cylinder_radius=run.cylinder_radius,
            )
        except ShiftDriftError as e:
            if e.exit_code != 1:
                raise
            report.failures.append(f"{run.name}: {e}")
            continue
        report.notes.append(f"{run.name}: {r.certificate.describe()}")
        est = Table(f"drift ({run.name})", ("automorphism", "m", "n_m", "Phi_estimate", "B", "r_m", "u_m"))
        for s in r.stages:
            for e in s.estimates:
                est.add(e.label, s.stage, s.radius, e.value, e.bound, s.ratio, s.unique_fraction)
        sig = Table(f"shift check ({run.name})", ("m", "Phi_sigma", "ok"))
        for s in r.stages:
            sig.add(s.stage, s.sigma, s.sigma == 1)
        matrix = Table(f"additivity defects ({run.name})", ("m", "a") + r.labels)
        for s in r.stages:
            for a in r.labels:
                matrix.add(s.stage, a, *(s.additivity[a, b] for b in r.labels))
        inv = Table(f"invariance defects ({run.name})", ("m", "automorphism", "defect", "budget"))
        for s in r.stages:
            for a in r.labels:
                d, budget = s.invariance[a]
                inv.add(s.stage, a, d, budget)
        report.tables += [est, sig, matrix, inv]
        for f in r.failures(run.max_ratio, run.min_unique, run.max_defect):
            report.failures.append(f"{run.name}: {f}")
    return report


def cmd_gallery(args) -> RunReport | str:
    if args.action == "export":
        return gallery_spec_text()
    spec = gallery_spec()
    report = RunReport("gallery")
    t = Table("gallery", ("kind", "name", "on", "description"))
    for n, s in spec.spaces.items():
        t.add("space", n, "", type(s).__name__)
    for n, (on, f) in spec.families.items():
        t.add("family", n, on, f"{len(f.schemas)} schemas")
    for n, c in spec.cocycles.items():
        t.add("cocycle", n, "", f"radius {c.radius}")
    for n, (on, a) in spec.automorphisms.items():
        t.add("automorphism", n, on, a.expr or "blockmap")
    for n, (on, mu) in spec.measures.items():
        t.add("measure", n, on, f"{len(mu.support)} points")
    for n, r in spec.runs.items():
        t.add("run", n, r.space, f"{r.stages} stages, n-max {r.n_max}")
    report.tables.append(t)
    return report


# entry point -----------------------------------------------------------------


def shipped_spec_text() -> str:
    return resources.files("shiftdrift").joinpath("data/gallery.spec").read_text()


def _load(args) -> SpecFile:
    if args.spec:
        return load_spec(args.spec)
    return parse_spec(shipped_spec_text())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="spec file (default: the shipped gallery spec)")
    common.add_argument("--out", help="directory to write the report into")
    common.add_argument("--format", choices=("csv", "text"), default="csv")
    staged = argparse.ArgumentParser(add_help=False)
    staged.add_argument("--run", help="run name (default: every run)")
    staged.add_argument("--stages", type=int)
    staged.add_argument("--n-max", type=int, dest="n_max")
    staged.add_argument("--entropy-threshold", type=float, dest="entropy_threshold")

    parser = argparse.ArgumentParser(prog="shiftdrift", description="Drift homomorphisms of zero-entropy shifts.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common, staged], help="verify automorphisms, guards and families")
    p = sub.add_parser("complexity", parents=[common], help="word complexity and entropy estimates")
    p.add_argument("--space", required=True)
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    sub.add_parser("cocycle", parents=[common, staged], help="cocycle table and relation checks")
    sub.add_parser("measure", parents=[common, staged], help="stage measures and invariance defects")
    sub.add_parser("drift", parents=[common, staged], help="the full drift pipeline")
    p = sub.add_parser("gallery", parents=[common], help="list or export the gallery")
    p.add_argument("action", choices=("list", "export"))
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "complexity": cmd_complexity,
    "cocycle": cmd_cocycle,
    "measure": cmd_measure,
    "drift": cmd_drift,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gallery":
            result = cmd_gallery(args)
        else:
            for name in ("stages", "n_max"):
                v = getattr(args, name, None)
                if v is not None and v < 1:
                    raise InputError(f"--{name.replace('_', '-')} must be positive")
            result = COMMANDS[args.command](_load(args), args)
    except ShiftDriftError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    if isinstance(result, str):
        text, code, ext = result, 0, "spec"
    else:
        text, code = result.render(args.format), result.exit_code
        ext = "csv" if args.format == "csv" else "txt"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        target = out / f"{args.command}.{ext}"
        target.write_text(text)
        print(target)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
