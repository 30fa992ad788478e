"""Tests for semigroup complexes, their lattice and transport along morphisms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointlike_lab.complexes import (
    Direction,
    FiberData,
    LatticeOp,
    SComplex,
    complex_generate,
    complex_lattice,
    complex_product,
    downward_close,
    enumerate_complexes,
    face_semigroup,
    is_complex_morphism,
    meet_all,
    power_complex,
    setwise_product,
    singleton_complex,
    transport,
)
from pointlike_lab.config import Limits
from pointlike_lab.errors import (
    BaseMismatch,
    EmptyOperand,
    MorphismConditionViolated,
    SizeCap,
)
from pointlike_lab.semigroup import Morphism, Semigroup, chain_semilattice, cyclic_group

A, B, C = 0b011, 0b101, 0b110


@pytest.fixture
def sl3():
    return chain_semilattice(3)


class TestBasics:
    def test_singleton_and_power_complex(self, z2):
        sing = singleton_complex(z2)
        power = power_complex(z2)
        assert sing.face_count == 2
        assert sing.max_faces == (0b01, 0b10)
        assert sing.is_singleton_complex()
        assert power.face_count == 3
        assert power.max_faces == (0b11,)
        assert sing < power
        assert 0b11 in power and 0b11 not in sing

    def test_empty_base(self):
        with pytest.raises(EmptyOperand):
            singleton_complex(Semigroup(()))

    def test_setwise_product_rejects_empty_operand(self, z2):
        with pytest.raises(EmptyOperand):
            setwise_product(z2, 0, 0b01)
        assert setwise_product(z2, 0b10, 0b10) == 0b01

    def test_check_invariants_reports_problems(self, z2):
        broken = SComplex(z2, frozenset({0b01}))
        assert any("singleton" in problem for problem in broken.check_invariants())
        assert singleton_complex(z2).check_invariants() == []


class TestGenerate:
    def test_products_force_more_faces(self, z3):
        assert complex_generate(z3, [0b011]) == power_complex(z3)

    def test_closed_pair_stays_small(self, lz2, sl3):
        assert complex_generate(lz2, [0b11]).face_count == 3
        assert complex_generate(sl3, [A]).face_count == 4

    def test_two_faces(self, sl3):
        k = complex_generate(sl3, [A, B])
        assert k.max_faces == (A, B)
        assert k.face_count == 5

    def test_incompatible_faces_generate_everything(self, sl3):
        assert complex_generate(sl3, [B, C]) == power_complex(sl3)

    def test_empty_family_gives_singletons(self, z2):
        assert complex_generate(z2, []) == singleton_complex(z2)

    def test_caps(self, z2):
        with pytest.raises(SizeCap):
            complex_generate(z2, [], Limits(max_complex_base=1))
        with pytest.raises(SizeCap):
            downward_close(z2, [0b11], Limits(max_faces=2))

    def test_debug_mode_checks_invariants(self, sl3, monkeypatch):
        monkeypatch.setenv("POINTLIKE_LAB_DEBUG", "1")
        assert complex_generate(sl3, [A, B]).check_invariants() == []


@settings(max_examples=50, deadline=None)
@given(family=st.lists(st.integers(min_value=1, max_value=7), max_size=3), cyclic=st.booleans())
def test_generation_is_a_closure(family, cyclic):
    s = cyclic_group(3) if cyclic else chain_semilattice(3)
    k = complex_generate(s, family)
    assert all(face in k for face in family)
    assert k.check_invariants() == []
    assert complex_generate(s, k.max_faces) == k


class TestLattice:
    def test_lattice_of_chain(self, sl3):
        lattice = enumerate_complexes(sl3)
        assert len(lattice) == 6
        assert lattice[0] == singleton_complex(sl3)
        assert lattice[-1] == power_complex(sl3)

    def test_lattice_of_group(self, z2, z3):
        assert len(enumerate_complexes(z2)) == 2
        assert len(enumerate_complexes(z3)) == 2

    def test_meet_and_join(self, sl3):
        ka = complex_generate(sl3, [A])
        kb = complex_generate(sl3, [B])
        # {0,2}{1} = {0,1}, so the face A is already generated by B
        assert kb.max_faces == (A, B)
        assert complex_lattice(LatticeOp.MEET, ka, kb) == ka
        assert complex_lattice(LatticeOp.JOIN, ka, kb).face_count == 5
        kc = complex_generate(sl3, [C])
        assert complex_lattice(LatticeOp.JOIN, kb, kc) == power_complex(sl3)

    def test_meet_all(self, sl3):
        ka = complex_generate(sl3, [A])
        assert meet_all([power_complex(sl3), ka]) == ka
        with pytest.raises(EmptyOperand):
            meet_all([])

    def test_bases_must_match(self, z2, lz2):
        with pytest.raises(BaseMismatch):
            complex_lattice(LatticeOp.MEET, singleton_complex(z2), singleton_complex(lz2))

    def test_cap(self, sl3):
        with pytest.raises(SizeCap):
            enumerate_complexes(sl3, Limits(max_enumeration_order=2))


class TestTransport:
    def test_to_the_trivial_semigroup(self, z2, trivial):
        phi = Morphism(z2, trivial, (0, 0))
        assert transport(phi, Direction.PUSHFORWARD, power_complex(z2)) == singleton_complex(trivial)
        assert transport(phi, Direction.PULLBACK, singleton_complex(trivial)) == power_complex(z2)

    def test_chain_collapse(self, sl3, sl2):
        phi = Morphism.checked(sl3, sl2, (0, 0, 1))
        pulled = transport(phi, Direction.PULLBACK, singleton_complex(sl2))
        assert pulled == complex_generate(sl3, [A])
        assert transport(phi, Direction.PUSHFORWARD, pulled) == singleton_complex(sl2)

    def test_galois_connection(self, sl3, sl2):
        phi = Morphism.checked(sl3, sl2, (0, 0, 1))
        for k_s in enumerate_complexes(sl3):
            for k_t in enumerate_complexes(sl2):
                pushed = transport(phi, Direction.PUSHFORWARD, k_s)
                pulled = transport(phi, Direction.PULLBACK, k_t)
                assert (pushed <= k_t) == (k_s <= pulled)

    def test_wrong_base(self, z2, trivial):
        phi = Morphism(z2, trivial, (0, 0))
        with pytest.raises(BaseMismatch):
            transport(phi, Direction.PUSHFORWARD, singleton_complex(trivial))

    def test_is_complex_morphism(self, z2, trivial):
        identity = Morphism.identity(z2)
        assert is_complex_morphism(identity, singleton_complex(z2), power_complex(z2))
        assert not is_complex_morphism(identity, power_complex(z2), singleton_complex(z2))


class TestProducts:
    def test_product_of_boxes(self, z2):
        product = complex_product(singleton_complex(z2), power_complex(z2))
        assert product.base.order == 4
        assert product.max_faces == (0b0011, 0b1100)
        assert product.face_count == 6

    def test_fiber_product_over_a_point(self, z2, trivial):
        to_point = Morphism(z2, trivial, (0, 0))
        fiber = FiberData(to_point, to_point, singleton_complex(trivial))
        k1, k2 = singleton_complex(z2), power_complex(z2)
        assert complex_product(k1, k2, fiber) == complex_product(k1, k2)

    def test_fiber_product_over_the_diagonal(self, z3):
        identity = Morphism.identity(z3)
        fiber = FiberData(identity, identity, power_complex(z3))
        k = complex_product(power_complex(z3), power_complex(z3), fiber)
        assert k == power_complex(z3)

    def test_fiber_morphisms_must_respect_faces(self, z2):
        identity = Morphism.identity(z2)
        fiber = FiberData(identity, identity, singleton_complex(z2))
        with pytest.raises(MorphismConditionViolated):
            complex_product(power_complex(z2), power_complex(z2), fiber)


class TestFaceSemigroup:
    def test_power_complex_of_z2(self, z2):
        q, faces = face_semigroup(power_complex(z2))
        assert faces == (0b01, 0b10, 0b11)
        assert q.table == ((0, 1, 2), (1, 0, 2), (2, 2, 2))

    def test_singletons_give_the_semigroup_back(self, z3):
        q, faces = face_semigroup(singleton_complex(z3))
        assert q == z3
        assert faces == (0b001, 0b010, 0b100)
