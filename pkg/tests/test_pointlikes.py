"""Tests for the pointlike oracle, certificates and the transfer checks."""

import pytest

from pointlike_lab.complexes import power_complex, singleton_complex
from pointlike_lab.errors import ExpressionError, PointsMismatch, SizeCap
from pointlike_lab.moduli import BuiltinContext, BuiltinModulus, ContextKind, JoinModulus, ModulusKind
from pointlike_lab.pointlikes import (
    certify_exact,
    fptc_check,
    lower_bound,
    oracle_pointlikes,
    reversal_transfer_check,
)
from pointlike_lab.pseudovarieties import PseudovarietyId
from pointlike_lab.relmorph import nerve

APERIODIC = PseudovarietyId.parse("aperiodic")
GROUPS = PseudovarietyId.parse("groups")
GRP = BuiltinModulus(ModulusKind.GRP)


class TestOracle:
    def test_aperiodic_codomains_cannot_separate_a_group(self, z2):
        result = oracle_pointlikes(z2, APERIODIC, 2)
        assert result.value == power_complex(z2)
        # trivial plus four aperiodic semigroups of order two
        assert result.codomains_used == 5

    def test_groups_separate_a_group(self, z2):
        result = oracle_pointlikes(z2, GROUPS, 2)
        assert result.value == singleton_complex(z2)
        assert result.codomains_used == 2
        assert result.graphs_intersected == 3
        assert nerve(result.witness) == result.value

    def test_larger_bound_only_shrinks(self, lz2):
        coarse = oracle_pointlikes(lz2, GROUPS, 1)
        fine = oracle_pointlikes(lz2, GROUPS, 3)
        assert fine.value <= coarse.value

    def test_bound_cap(self, z2):
        with pytest.raises(SizeCap):
            oracle_pointlikes(z2, GROUPS, 99)


class TestCertify:
    def test_exact_certificate(self, z2):
        certificate = certify_exact(z2, APERIODIC, GRP, 3)
        assert certificate.exact
        assert not certificate.approximate
        assert certificate.lower == power_complex(z2)
        assert certificate.lower.face_count == 3

    def test_lower_bound_sits_under_the_oracle(self, lz2):
        lower = lower_bound(lz2, BuiltinModulus(ModulusKind.JCL))
        upper = oracle_pointlikes(lz2, PseudovarietyId.parse("j-trivial"), 2)
        assert lower <= upper.value

    def test_points_must_cover_the_pseudovariety(self, z2):
        with pytest.raises(PointsMismatch):
            certify_exact(z2, GROUPS, GRP, 3)


class TestTransfer:
    def test_reversal(self, lz2):
        assert reversal_transfer_check(lz2, PseudovarietyId.parse("r-trivial"), 2)

    def test_fixed_point_transfer_for_subgroups(self):
        report = fptc_check(BuiltinContext(ContextKind.GRP), GRP, 3)
        assert report.passed
        assert report.checked == 30
        assert report.pseudovariety == APERIODIC

    def test_fixed_point_transfer_needs_named_points(self):
        with pytest.raises(ExpressionError):
            fptc_check(BuiltinContext(ContextKind.GRP), JoinModulus(GRP, BuiltinModulus(ModulusKind.JCL)), 2)
