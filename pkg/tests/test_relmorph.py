"""Tests for relational morphisms, nerves and minimal graphs."""

import pytest

from pointlike_lab.complexes import power_complex, singleton_complex
from pointlike_lab.errors import (
    CodDomMismatch,
    DomMismatch,
    MorphismConditionViolated,
    NotGenerating,
    NotProductClosed,
    NotSurjectiveOntoDomain,
)
from pointlike_lab.relmorph import (
    Cospan,
    RelationalMorphism,
    change_of_base,
    compose,
    direct_sum,
    from_morphism,
    graph_closure,
    greedy_generators,
    identity,
    is_division,
    minimal_graphs,
    nerve,
    product,
    product_and_pullback,
    reverse_rel,
    terminal,
)
from pointlike_lab.semigroup import Morphism


class TestChecked:
    def test_accepts_identity_graph(self, z2):
        rho = RelationalMorphism.checked(z2, z2, [(0, 0), (1, 1)])
        assert rho == identity(z2)

    def test_rejects_open_graph(self, z2):
        with pytest.raises(NotProductClosed):
            RelationalMorphism.checked(z2, z2, [(1, 0)])

    def test_rejects_partial_graph(self, z2):
        with pytest.raises(NotSurjectiveOntoDomain) as exc_info:
            RelationalMorphism.checked(z2, z2, [(0, 0)])
        assert exc_info.value.details == {"missing": [1]}

    def test_graph_closure(self, z2):
        assert graph_closure(z2, z2, [(1, 0)]) == frozenset({(0, 0), (1, 0)})


class TestQueries:
    def test_images_and_fibers(self, z2):
        rho = terminal(z2)
        assert rho.image(1) == 0b1
        assert rho.inverse_image(0) == 0b11
        assert rho.img() == 0b1
        assert rho.fibers() == (0b11,)

    def test_graph_mask(self, z2):
        # (s, t) sits at s*|T| + t
        assert identity(z2).graph_mask == 0b1001

    def test_division(self, z2, trivial):
        assert is_division(identity(z2))
        assert not is_division(terminal(z2))
        assert not is_division(from_morphism(Morphism(z2, trivial, (0, 0))))


class TestNerve:
    def test_terminal_relates_everything(self, z2):
        assert nerve(terminal(z2)) == power_complex(z2)

    def test_identity_gives_singletons(self, z3):
        assert nerve(identity(z3)) == singleton_complex(z3)

    def test_debug_cross_check(self, lz2, monkeypatch):
        monkeypatch.setenv("POINTLIKE_LAB_DEBUG", "1")
        assert nerve(terminal(lz2)).face_count == 3


class TestConstructions:
    def test_compose(self, z2):
        assert compose(identity(z2), terminal(z2)) == terminal(z2)

    def test_compose_needs_matching_ends(self, z2, lz2):
        with pytest.raises(CodDomMismatch):
            compose(identity(z2), identity(lz2))

    def test_change_of_base(self, z2, trivial):
        phi = Morphism.checked(trivial, z2, (0,))
        rho = change_of_base(phi, identity(z2))
        assert rho.dom == trivial
        assert rho.graph == frozenset({(0, 0)})

    def test_direct_sum(self, z2):
        rho = direct_sum(identity(z2), terminal(z2))
        assert rho.cod.order == 2
        assert rho.graph == frozenset({(0, 0), (1, 1)})
        assert is_division(rho)

    def test_direct_sum_needs_common_domain(self, z2, lz2):
        with pytest.raises(DomMismatch):
            direct_sum(identity(z2), identity(lz2))

    def test_product(self, z2, lz2):
        rho = product(identity(z2), terminal(lz2))
        assert rho.dom.order == 4
        assert rho.cod.order == 2
        assert nerve(rho).max_faces == (0b0011, 0b1100)

    def test_reverse(self, lz2, rz2):
        rho = reverse_rel(identity(lz2))
        assert rho.dom == rz2
        assert rho.graph == identity(lz2).graph


class TestPullback:
    def test_over_a_point_is_the_product(self, z2, z3, trivial):
        to_point_2 = Morphism(z2, trivial, (0, 0))
        to_point_3 = Morphism(z3, trivial, (0, 0, 0))
        cospan = Cospan(to_point_2, to_point_2, to_point_3, to_point_3, identity(trivial))
        rho1, rho2 = identity(z2), identity(z3)
        assert product_and_pullback(rho1, rho2, cospan) == product(rho1, rho2)

    def test_without_cospan(self, z2):
        rho = identity(z2)
        assert product_and_pullback(rho, rho) == product(rho, rho)

    def test_leg_must_land_in_target(self, z2):
        rho = identity(z2)
        collapse = Morphism(z2, z2, (0, 0))
        cospan = Cospan(Morphism.identity(z2), collapse, Morphism.identity(z2), Morphism.identity(z2), rho)
        with pytest.raises(MorphismConditionViolated):
            product_and_pullback(rho, rho, cospan)


class TestMinimalGraphs:
    def test_greedy_generators(self, z3, lz2):
        assert greedy_generators(z3) == (1,)
        assert greedy_generators(lz2) == (0, 1)

    def test_one_graph_per_assignment(self, z2):
        graphs = list(minimal_graphs(z2, z2))
        assert len(graphs) == 2
        assert identity(z2) in graphs
        assert RelationalMorphism(z2, z2, frozenset({(0, 0), (1, 0)})) in graphs

    def test_every_graph_is_a_relational_morphism(self, lz2, sl2):
        for rho in minimal_graphs(lz2, sl2):
            RelationalMorphism.checked(rho.dom, rho.cod, rho.graph)

    def test_rejects_non_generating_set(self, z2):
        with pytest.raises(NotGenerating):
            minimal_graphs(z2, z2, gens=(0,))
