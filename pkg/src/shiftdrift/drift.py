"""Drift estimates: integrate the cocycle against stage measures."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .asymptotic import cocycle_bound, drift_cocycle, locality_radius
from .automorphisms import Automorphism, compose, shift_map
from .errors import InputError, RefusedError
from .measure import (
    CAFamily,
    EmpiricalMeasure,
    empirical_measure,
    half_cylinder,
    invariance_defect,
)
from .spaces import EntropyCertificate, GuardResult, ShiftSpace, infinite_shift_guard, zero_entropy_certificate


@dataclass(frozen=True)
class DriftEstimate:
    label: str
    stage: int
    radius: int
    value: Fraction
    bound: int
    ratio: Fraction
    unique_fraction: Fraction

    def __post_init__(self):
        if abs(self.value) > self.bound:
            raise InputError(f"drift {self.value} of {self.label} exceeds its cocycle bound {self.bound}")


def drift_estimate(nu: EmpiricalMeasure, a: Automorphism) -> DriftEstimate:
    """Average of ``drift_cocycle(a, .)`` over the support of ``nu``."""
    b = locality_radius(a)
    if nu.radius < b:
        raise InputError(f"measure radius {nu.radius} is below the locality radius {b} of {a.label}")
    total = sum(drift_cocycle(a, p) for p in nu.support)
    return DriftEstimate(
        a.label, nu.stage, nu.radius, Fraction(total, len(nu.support)),
        cocycle_bound(a), nu.ratio, nu.unique_fraction,
    )


def additivity_defect(nu: EmpiricalMeasure, a: Automorphism, b: Automorphism) -> Fraction:
    """``|Phi(a b) - Phi(a) - Phi(b)|`` at the stage of ``nu``."""
    ab = compose(a, b)
    return abs(drift_estimate(nu, ab).value - drift_estimate(nu, a).value - drift_estimate(nu, b).value)


def defect_budget(nu: EmpiricalMeasure, a: Automorphism) -> Fraction:
    """Stage allowance for the invariance defect of ``a``.

    ``2(1-u) + 2(r-1) + 4b/(2n+1)``: non-unique extensions, window growth and
    the boundary strip that ``act`` can read past.  This bookkeeping is our
    own and not a published bound.
    """
    b = locality_radius(a)
    return 2 * (1 - nu.unique_fraction) + 2 * (nu.ratio - 1) + Fraction(4 * b, 2 * nu.radius + 1)


# pipeline --------------------------------------------------------------------


@dataclass(frozen=True)
class StageResult:
    stage: int
    radius: int
    size: int
    ratio: Fraction
    unique_fraction: Fraction
    estimates: tuple
    # (label_a, label_b) -> Fraction, or None when the radius is too small
    additivity: dict
    # label -> (defect or None, budget)
    invariance: dict
    # drift of the shift itself, computed whatever the user labels say
    sigma: Fraction = Fraction(1)

    def estimate(self, label: str) -> DriftEstimate:
        for e in self.estimates:
            if e.label == label:
                return e
        raise KeyError(label)


@dataclass(frozen=True)
class Report:
    space: str
    guard: GuardResult
    certificate: EntropyCertificate
    cylinder_radius: int
    labels: tuple
    stages: tuple = field(default=())

    @property
    def sigma_ok(self) -> bool:
        return all(s.sigma == 1 for s in self.stages)

    def failures(self, max_ratio=None, min_unique=None, max_defect=None) -> list:
        out = []
        for s in self.stages:
            if s.sigma != 1:
                out.append(f"stage {s.stage}: Phi(sigma) = {s.sigma}, expected 1")
            if max_ratio is not None and s.ratio > max_ratio:
                out.append(f"stage {s.stage}: ratio {float(s.ratio):.6f} above {max_ratio}")
            if min_unique is not None and s.unique_fraction < min_unique:
                out.append(f"stage {s.stage}: unique fraction {float(s.unique_fraction):.6f} below {min_unique}")
            if max_defect is not None:
                for (a, b), d in s.additivity.items():
                    if d is not None and d > max_defect:
                        out.append(f"stage {s.stage}: additivity defect ({a}, {b}) = {float(d):.6f} above {max_defect}")
        return out


def theorem_pipeline(
    space: ShiftSpace,
    family: CAFamily | None,
    automorphisms: Sequence[Automorphism] | Mapping[str, Automorphism],
    stages: int,
    n_max: int,
    *,
    entropy_n: int = 30,
    entropy_threshold: float = 0.12,
    cylinder_radius: int = 1,
) -> Report:
    """Stages ``1..stages``: window choice, measure, drift values and defects.

    Refuses (``RefusedError``) unless the space passes the infinite-shift
    guard and the zero-entropy certificate.  The drift of the shift is
    always computed (``StageResult.sigma``), whether or not it is listed.
    """
    if stages < 1:
        raise InputError(f"need at least one stage, got {stages}")
    guard = infinite_shift_guard(space)
    if not guard.passed:
        raise RefusedError(guard.reason)
    cert = zero_entropy_certificate(space, entropy_n, entropy_threshold)
    if not cert.passed:
        raise RefusedError(cert.describe(), cert)
    if family is None or family.space != space:
        raise InputError("the family does not describe the given space")

    autos = dict(automorphisms) if isinstance(automorphisms, Mapping) else {a.label: a for a in automorphisms}
    shift = shift_map(1, space.alphabet)
    labels = tuple(autos)
    cylinder = None
    results = []
    for m in range(1, stages + 1):
        nu = empirical_measure(family, m, n_max)
        if cylinder is None:
            cylinder = half_cylinder(family, cylinder_radius)
        estimates = []
        for label, a in autos.items():
            e = drift_estimate(nu, a)
            estimates.append(DriftEstimate(label, e.stage, e.radius, e.value, e.bound, e.ratio, e.unique_fraction))
        additivity = {}
        for la, a in autos.items():
            for lb, b in autos.items():
                need = locality_radius(compose(a, b))
                additivity[la, lb] = additivity_defect(nu, a, b) if nu.radius >= need else None
        invariance = {}
        for label, a in autos.items():
            ok = cylinder.radius <= nu.radius - locality_radius(a)
            invariance[label] = (invariance_defect(nu, a, cylinder) if ok else None, defect_budget(nu, a))
        results.append(
            StageResult(m, nu.radius, len(nu.support), nu.ratio, nu.unique_fraction,
                        tuple(estimates), additivity, invariance, drift_estimate(nu, shift).value)
        )
    return Report(space.name or "space", guard, cert, cylinder_radius, labels, tuple(results))
