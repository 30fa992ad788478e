"""Tests for the property-suite runner."""

import pytest

from pointlike_lab.enumeration import Dedup
from pointlike_lab.errors import ExpressionError
from pointlike_lab.moduli import ModulusKind
from pointlike_lab.pseudovarieties import PseudovarietyKind
from pointlike_lab.laws import (
    MAX_REPORTED_VIOLATIONS,
    SUITES,
    SuiteResult,
    _Tally,
    naive_counts,
    run_suite,
)


def test_every_suite_is_registered():
    assert set(SUITES) == {
        "sgp-core",
        "enumeration",
        "closure",
        "adjunction",
        "lattice",
        "nerve",
        "moduli-axioms",
        "contexts",
        "points",
        "points-closure",
        "restriction",
        "fixpoints",
        "monad",
        "bounds",
        "certificates",
        "effectiveness",
        "reversal",
        "fptc",
    }


def test_unknown_suite():
    with pytest.raises(ExpressionError):
        run_suite("no-such-suite", 2)


def test_suite_result_passed():
    assert SuiteResult("closure", 2, 4).passed
    assert not SuiteResult("closure", 2, 4, ("broken",)).passed


def test_tally_caps_reported_violations():
    tally = _Tally()
    for i in range(MAX_REPORTED_VIOLATIONS + 5):
        tally.check(False, lambda: f"violation {i}")
    tally.check(True, lambda: "never shown")
    result = tally.result("demo", 1)
    assert result.checked == MAX_REPORTED_VIOLATIONS + 6
    assert len(result.violations) == MAX_REPORTED_VIOLATIONS
    assert result.violations[0] == "violation 0"


@pytest.mark.parametrize(
    "n, raw, iso, anti",
    [(1, 1, 1, 1), (2, 8, 5, 4)],
)
def test_naive_counts(n, raw, iso, anti):
    assert naive_counts(n) == {Dedup.RAW: raw, Dedup.UP_TO_ISO: iso, Dedup.UP_TO_ISO_ANTI: anti}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_at_order_three(name):
    result = run_suite(name, 3)
    assert result.passed, result.violations
    assert result.checked > 0


def test_heavy_suites_cap_their_order():
    assert run_suite("closure", 5).order == 3


def test_effectiveness_certifies_every_small_semigroup():
    result = run_suite("effectiveness", 3)
    assert result.passed, result.violations
    # five matching pairs over the 1 + 5 + 24 semigroups of order at most 3
    assert result.checked == 5 * 30


def test_effectiveness_reports_inexact_pairs(monkeypatch):
    monkeypatch.setattr(
        "pointlike_lab.laws._MATCHING",
        ((PseudovarietyKind.TRIVIAL, ModulusKind.GRP),),
    )
    result = run_suite("effectiveness", 2)
    assert not result.passed
    # every subset of a semigroup is trivial-pointlike, subgroups of a semilattice are not
    assert result.violations[0].startswith("grp does not pin")


def test_nerve_sampling_is_repeatable():
    first = run_suite("nerve", 3)
    second = run_suite("nerve", 3)
    assert first == second
    assert first.order == 3
    assert first.passed, first.violations


def test_points_closure_and_restriction_cover_order_three():
    for name in ("points-closure", "restriction"):
        result = run_suite(name, 4)
        assert result.order == 3
        assert result.passed, result.violations
        assert result.checked > 0
