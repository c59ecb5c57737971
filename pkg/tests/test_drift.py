from fractions import Fraction

import pytest

from shiftdrift.automorphisms import compose, identity, power, shift_map
from shiftdrift.drift import (
    DriftEstimate,
    additivity_defect,
    defect_budget,
    drift_estimate,
    theorem_pipeline,
)
from shiftdrift.errors import InputError, RefusedError
from shiftdrift.gallery import BINARY, full_shift, gallery_automorphisms
from shiftdrift.measure import empirical_measure

SIGMA = shift_map(1, BINARY)


@pytest.mark.parametrize("k", range(-5, 6))
def test_shift_powers_on_sunny(sunny, k):
    _, fam = sunny
    nu = empirical_measure(fam, 1, 12)
    assert drift_estimate(nu, shift_map(k, BINARY)).value == k


def test_additivity_is_exact_on_sunny(sunny):
    _, fam = sunny
    nu = empirical_measure(fam, 1, 12)
    autos = [shift_map(k, BINARY) for k in (-2, -1, 0, 1, 2)]
    for a in autos:
        for b in autos:
            assert additivity_defect(nu, a, b) == 0


def test_radius_below_locality_is_rejected(sunny):
    _, fam = sunny
    nu = empirical_measure(fam, 1, 2)
    with pytest.raises(InputError):
        drift_estimate(nu, power(SIGMA, 3))


def test_estimate_respects_bound():
    with pytest.raises(InputError):
        DriftEstimate("x", 1, 3, Fraction(3), 2, Fraction(1), Fraction(1))


def test_budget_is_non_negative(s_squared):
    _, fam = s_squared
    nu = empirical_measure(fam, 1, 5)
    for a in gallery_automorphisms("SxS").values():
        assert defect_budget(nu, a) >= 0


def test_pipeline_on_sunny(sunny):
    s, fam = sunny
    autos = {f"s{k}": shift_map(k, BINARY) for k in (-2, -1, 1, 2)}
    report = theorem_pipeline(s, fam, autos, 3, 10, cylinder_radius=2)
    assert report.sigma_ok and report.certificate.passed and report.guard.passed
    assert report.labels == ("s-2", "s-1", "s1", "s2")
    for stage in report.stages:
        for label, a in autos.items():
            assert stage.estimate(label).value == int(label[1:])
        assert all(d == 0 for d in stage.additivity.values())
        assert all(d == 0 for d, _ in stage.invariance.values())
    assert report.failures(max_ratio=2, min_unique=0, max_defect=0) == []


def test_pipeline_checks_sigma_even_if_unlisted(s_squared):
    space, fam = s_squared
    autos = gallery_automorphisms("SxS")
    report = theorem_pipeline(space, fam, {"swap": autos["swap"]}, 2, 5)
    assert report.labels == ("swap",)
    assert all(s.sigma == 1 for s in report.stages)
    assert all(s.estimate("swap").value == 0 for s in report.stages)


def test_pipeline_refuses_positive_entropy():
    with pytest.raises(RefusedError) as info:
        theorem_pipeline(full_shift(), None, [SIGMA], 1, 4)
    assert info.value.certificate is not None
    assert not info.value.certificate.passed
    assert info.value.exit_code == 1


def test_pipeline_needs_matching_family(sunny, s_squared):
    s, _ = sunny
    _, other = s_squared
    with pytest.raises(InputError):
        theorem_pipeline(s, other, [SIGMA], 1, 4)
    with pytest.raises(InputError):
        theorem_pipeline(s, None, [SIGMA], 1, 4)
    with pytest.raises(InputError):
        theorem_pipeline(s, sunny[1], [SIGMA], 0, 4)
