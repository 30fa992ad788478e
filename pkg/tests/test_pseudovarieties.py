"""Tests for pseudovariety ids and membership."""

import pytest

from pointlike_lab.config import Limits
from pointlike_lab.errors import ExpressionError, SizeCap
from pointlike_lab.pseudovarieties import (
    PseudovarietyId,
    PseudovarietyKind,
    pv_member,
    pv_members,
    reversed_pseudovariety,
)
from pointlike_lab.semigroup import Semigroup, chain_semilattice


def pv(text):
    return PseudovarietyId.parse(text)


class TestParse:
    def test_plain_names(self):
        assert pv("aperiodic") == PseudovarietyId(PseudovarietyKind.APERIODIC)
        assert pv(" J-Trivial ").kind is PseudovarietyKind.J_TRIVIAL

    def test_parameterised_names(self):
        parsed = pv("nilpotent:2")
        assert parsed.k == 2
        assert parsed.name == "nilpotent:2"
        assert str(pv("delay:3")) == "delay:3"

    def test_unknown_name(self):
        with pytest.raises(ExpressionError, match="unknown pseudovariety"):
            pv("monoids")

    def test_bad_parameters(self):
        with pytest.raises(ExpressionError):
            pv("delay")
        with pytest.raises(ExpressionError):
            pv("aperiodic:2")
        with pytest.raises(ExpressionError):
            pv("nilpotent:x")
        with pytest.raises(ExpressionError):
            pv("nilpotent:0")


class TestMembership:
    def test_groups(self, z2, z3, lz2):
        assert pv_member(pv("groups"), z2)
        assert pv_member(pv("groups"), z3)
        assert not pv_member(pv("groups"), lz2)
        assert not pv_member(pv("aperiodic"), z2)

    def test_left_zero(self, lz2, rz2):
        assert pv_member(pv("left-zero"), lz2)
        assert pv_member(pv("r-trivial"), lz2)
        assert not pv_member(pv("l-trivial"), lz2)
        assert pv_member(pv("bands"), lz2)
        assert not pv_member(pv("left-zero"), rz2)

    def test_semilattice(self, sl2):
        assert pv_member(pv("semilattices"), sl2)
        assert pv_member(pv("j-trivial"), sl2)
        assert not pv_member(pv("unique-idempotent"), sl2)

    def test_nilpotent(self, n2, sl2):
        assert pv_member(pv("nilpotent"), n2)
        assert pv_member(pv("nilpotent:2"), n2)
        assert not pv_member(pv("nilpotent:1"), n2)
        assert not pv_member(pv("nilpotent"), sl2)

    def test_delay(self, rz2, lz2):
        assert pv_member(pv("delay:1"), rz2)
        assert not pv_member(pv("delay:1"), lz2)
        assert pv_member(pv("reverse-delay:1"), lz2)

    def test_locally_trivial(self, n2, z2):
        assert pv_member(pv("locally-trivial"), n2)
        assert not pv_member(pv("locally-trivial"), z2)

    @pytest.mark.parametrize("kind", list(PseudovarietyKind))
    def test_trivial_and_empty_semigroups_belong_everywhere(self, kind, trivial):
        k = 2 if kind in (PseudovarietyKind.DELAY_K, PseudovarietyKind.REVERSE_DELAY_K) else None
        assert pv_member(PseudovarietyId(kind, k), trivial)
        assert pv_member(PseudovarietyId(kind, k), Semigroup(()))


class TestReversal:
    def test_reversal_table(self):
        assert reversed_pseudovariety(pv("r-trivial")) == pv("l-trivial")
        assert reversed_pseudovariety(pv("left-zero")) == pv("right-zero")
        assert reversed_pseudovariety(pv("delay:2")) == pv("reverse-delay:2")
        assert reversed_pseudovariety(pv("aperiodic")) == pv("aperiodic")


class TestMembers:
    def test_groups_up_to_three(self):
        members = pv_members(pv("groups"), 3)
        assert [s.order for s in members] == [1, 2, 3]

    def test_semilattices_up_to_three(self):
        members = pv_members(pv("semilattices"), 3)
        # 1 + 1 + 2: the three-element chain and the two-atom semilattice with zero
        assert len(members) == 4
        assert any(s.order == 3 and pv_member(pv("semilattices"), s) for s in members)
        assert all(pv_member(pv("semilattices"), s) for s in members)
        assert chain_semilattice(1) in members

    def test_cap(self):
        with pytest.raises(SizeCap):
            pv_members(pv("groups"), 3, Limits(max_enumeration_order=2))
