"""Relational morphisms and their nerves.

A relational morphism ρ: S ⇸ T is stored by its graph, a set of pairs (s, t)
that is closed under the componentwise product and relates every s to
something. The graph is also addressable as a mask over ``direct_product(S,
T)``, where (s, t) has index ``s*|T| + t``.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple

from pointlike_lab.bitsets import mask_of, members, nonempty_subsets, popcount
from pointlike_lab.complexes import SComplex, downward_close
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.errors import (
    BaseMismatch,
    CodDomMismatch,
    DomMismatch,
    MorphismConditionViolated,
    NotGenerating,
    NotProductClosed,
    NotSurjectiveOntoDomain,
    SizeCap,
)
from pointlike_lab.logging import debug_mode_enabled, get_logger
from pointlike_lab.semigroup import (
    Morphism,
    Semigroup,
    direct_product,
    fiber_subsemigroup,
    product_table,
    reverse,
    trivial_semigroup,
)

logger = get_logger(__name__)

Pair = Tuple[int, int]


@lru_cache(maxsize=256)
def _pair_semigroup(s: Semigroup, t: Semigroup) -> Semigroup:
    return product_table(s, t)


@dataclass(frozen=True)
class RelationalMorphism:
    """A relational morphism S ⇸ T given by its graph."""

    dom: Semigroup
    cod: Semigroup
    graph: FrozenSet[Pair]

    @classmethod
    def checked(cls, dom: Semigroup, cod: Semigroup, pairs: Iterable[Pair]) -> "RelationalMorphism":
        """Validate a graph and wrap it.

        Raises:
            NotProductClosed: If the pairs are not closed under multiplication
            NotSurjectiveOntoDomain: If some element of the domain is unrelated
        """
        graph = frozenset((int(s), int(t)) for s, t in pairs)
        for s, t in graph:
            if not (0 <= s < dom.order and 0 <= t < cod.order):
                raise NotProductClosed(f"pair ({s},{t}) is out of range")
        for (s1, t1), (s2, t2) in itertools.product(graph, repeat=2):
            if (dom.mul(s1, s2), cod.mul(t1, t2)) not in graph:
                raise NotProductClosed(
                    f"graph is not product-closed at ({s1},{t1})·({s2},{t2})",
                    {"pairs": [[s1, t1], [s2, t2]]},
                )
        missing = [s for s in dom.elements if s not in {p[0] for p in graph}]
        if missing:
            raise NotSurjectiveOntoDomain(
                f"domain elements {missing} are not related to anything", {"missing": missing}
            )
        return cls(dom, cod, graph)

    @cached_property
    def graph_mask(self) -> int:
        m = self.cod.order
        return mask_of(s * m + t for s, t in self.graph)

    @cached_property
    def _fibers(self) -> Dict[int, int]:
        fibers: Dict[int, int] = {}
        for s, t in self.graph:
            fibers[t] = fibers.get(t, 0) | (1 << s)
        return fibers

    def image(self, s: int) -> int:
        """(s)ρ as a mask over T."""
        return mask_of(t for x, t in self.graph if x == s)

    def inverse_image(self, t: int) -> int:
        """(t)ρ^-1 as a mask over S."""
        return self._fibers.get(t, 0)

    def img(self) -> int:
        """Img(ρ), the set of related codomain elements."""
        return mask_of(self._fibers)

    def fibers(self) -> Tuple[int, ...]:
        """Nonempty fibers (t)ρ^-1 in order of t."""
        return tuple(self._fibers[t] for t in sorted(self._fibers))

    def sorted_pairs(self):
        return sorted(self.graph)


def graph_closure(
    s: Semigroup, t: Semigroup, pairs: Iterable[Pair], limits: Optional[Limits] = None
) -> FrozenSet[Pair]:
    """Smallest product-closed set of pairs containing ``pairs``.

    Raises:
        SizeCap: If |S|·|T| exceeds ``max_product_order``
    """
    limits = limits or get_limits()
    if s.order * t.order > limits.max_product_order:
        raise SizeCap("product order", s.order * t.order, limits.max_product_order)
    m = t.order
    closed = _pair_semigroup(s, t).closure(mask_of(a * m + b for a, b in pairs))
    return frozenset(divmod(z, m) for z in members(closed))


def from_morphism(phi: Morphism) -> RelationalMorphism:
    """The graph {(s, sφ)} of a homomorphism."""
    return RelationalMorphism(phi.dom, phi.cod, frozenset((s, phi.map[s]) for s in phi.dom.elements))


def identity(s: Semigroup) -> RelationalMorphism:
    return from_morphism(Morphism.identity(s))


def terminal(s: Semigroup) -> RelationalMorphism:
    """The unique relational morphism S ⇸ 1, relating everything to the point."""
    return RelationalMorphism(s, trivial_semigroup(), frozenset((x, 0) for x in s.elements))


def compose(rho: RelationalMorphism, mu: RelationalMorphism) -> RelationalMorphism:
    """ρ then μ: {(s, u) : (s, t) ∈ ρ and (t, u) ∈ μ for some t}.

    Raises:
        CodDomMismatch: If cod(ρ) ≠ dom(μ)
    """
    if rho.cod != mu.dom:
        raise CodDomMismatch("codomain of the first relational morphism is not the domain of the second")
    forward: Dict[int, list] = {}
    for t, u in mu.graph:
        forward.setdefault(t, []).append(u)
    graph = frozenset((s, u) for s, t in rho.graph for u in forward.get(t, ()))
    return RelationalMorphism(rho.dom, mu.cod, graph)


def change_of_base(phi: Morphism, rho: RelationalMorphism) -> RelationalMorphism:
    """Pull ρ: S ⇸ T back along φ: R → S."""
    return compose(from_morphism(phi), rho)


def direct_sum(rho1: RelationalMorphism, rho2: RelationalMorphism, limits: Optional[Limits] = None) -> RelationalMorphism:
    """ρ1 ⊕ ρ2: S ⇸ T1 × T2 relating s to (t1, t2) when s ρ1 t1 and s ρ2 t2.

    Raises:
        DomMismatch: If the domains differ
        SizeCap: If |T1|·|T2| exceeds the product cap
    """
    if rho1.dom != rho2.dom:
        raise DomMismatch("direct sum needs relational morphisms with a common domain")
    m = rho2.cod.order
    cod = direct_product(rho1.cod, rho2.cod, limits)
    graph = frozenset(
        (s, t1 * m + t2)
        for s, t1 in rho1.graph
        for x, t2 in rho2.graph
        if x == s
    )
    return RelationalMorphism(rho1.dom, cod, graph)


def product(rho1: RelationalMorphism, rho2: RelationalMorphism, limits: Optional[Limits] = None) -> RelationalMorphism:
    """ρ1 × ρ2: S1 × S2 ⇸ T1 × T2."""
    n2, m2 = rho2.dom.order, rho2.cod.order
    dom = direct_product(rho1.dom, rho2.dom, limits)
    cod = direct_product(rho1.cod, rho2.cod, limits)
    graph = frozenset(
        (s1 * n2 + s2, t1 * m2 + t2)
        for s1, t1 in rho1.graph
        for s2, t2 in rho2.graph
    )
    return RelationalMorphism(dom, cod, graph)


@dataclass(frozen=True)
class Cospan:
    """Morphisms (φi, ψi) from ρi into a common relational morphism μ: U ⇸ V."""

    phi1: Morphism
    psi1: Morphism
    phi2: Morphism
    psi2: Morphism
    target: RelationalMorphism


def _check_leg(rho: RelationalMorphism, phi: Morphism, psi: Morphism, target: RelationalMorphism) -> None:
    if phi.dom != rho.dom or psi.dom != rho.cod:
        raise BaseMismatch("cospan morphisms must start at the relational morphism's ends")
    if phi.cod != target.dom or psi.cod != target.cod:
        raise BaseMismatch("cospan morphisms must end at the target relational morphism's ends")
    for s, t in rho.graph:
        if (phi.map[s], psi.map[t]) not in target.graph:
            raise MorphismConditionViolated(
                f"pair ({s},{t}) maps to ({phi.map[s]},{psi.map[t]}) outside the target graph",
                {"pair": [s, t]},
            )


def pullback(rho1: RelationalMorphism, rho2: RelationalMorphism, cospan: Cospan, limits: Optional[Limits] = None) -> RelationalMorphism:
    """Pullback of ρ1 and ρ2 over a cospan into μ.

    The result relates the fiber products S1 ×_U S2 ⇸ T1 ×_V T2 (indexed as
    by :func:`~pointlike_lab.semigroup.fiber_subsemigroup`) through the
    product graph restricted to both fibers.

    Raises:
        BaseMismatch: If the cospan does not fit ρ1 and ρ2
        MorphismConditionViolated: If a leg does not map its graph into μ's
        NotSurjectiveOntoDomain: If the restricted graph misses part of the
            domain fiber
    """
    _check_leg(rho1, cospan.phi1, cospan.psi1, cospan.target)
    _check_leg(rho2, cospan.phi2, cospan.psi2, cospan.target)

    dom, dom_embedding = fiber_subsemigroup(cospan.phi1, cospan.phi2, limits)
    cod, cod_embedding = fiber_subsemigroup(cospan.psi1, cospan.psi2, limits)
    dom_position = {z: i for i, z in enumerate(dom_embedding)}
    cod_position = {z: i for i, z in enumerate(cod_embedding)}

    full = product(rho1, rho2, limits)
    graph = frozenset(
        (dom_position[s], cod_position[t])
        for s, t in full.graph
        if s in dom_position and t in cod_position
    )
    covered = {s for s, _ in graph}
    if len(covered) != dom.order:
        raise NotSurjectiveOntoDomain("pullback graph does not cover the domain fiber")
    return RelationalMorphism(dom, cod, graph)


def product_and_pullback(
    rho1: RelationalMorphism,
    rho2: RelationalMorphism,
    fiber: Optional[Cospan] = None,
    limits: Optional[Limits] = None,
) -> RelationalMorphism:
    """Product ρ1 × ρ2, or the pullback over ``fiber`` when given."""
    if fiber is None:
        return product(rho1, rho2, limits)
    return pullback(rho1, rho2, fiber, limits)


def reverse_rel(rho: RelationalMorphism) -> RelationalMorphism:
    """ρ^rev: S^rev ⇸ T^rev with the same pairs."""
    return RelationalMorphism(reverse(rho.dom), reverse(rho.cod), rho.graph)


def is_division(rho: RelationalMorphism) -> bool:
    """True iff every codomain point is related to at most one element."""
    return all(popcount(fiber) == 1 for fiber in rho.fibers())


def _nerve_by_intersections(rho: RelationalMorphism) -> FrozenSet[int]:
    images = [rho.image(s) for s in rho.dom.elements]
    faces = set()
    for x in nonempty_subsets(rho.dom.order):
        common = rho.cod.full
        for s in members(x):
            common &= images[s]
        if common:
            faces.add(x)
    return frozenset(faces)


def nerve(rho: RelationalMorphism, limits: Optional[Limits] = None) -> SComplex:
    """Nrv(ρ): the subsets of S whose elements share a common image point.

    Computed as the downward closure of the fibers (t)ρ^-1. In debug
    mode (see :func:`debug_mode_enabled`), the intersection-of-images description is
    computed as well and must agree.
    """
    faces = downward_close(rho.dom, rho.fibers(), limits)
    if debug_mode_enabled() and rho.dom.order <= 12:
        assert faces == _nerve_by_intersections(rho), "nerve characterisations disagree"
    return SComplex(rho.dom, faces)


def greedy_generators(s: Semigroup) -> Tuple[int, ...]:
    """A generating set built by repeatedly adding the element with the
    largest closure gain (smallest index on ties)."""
    chosen = []
    current = 0
    while current != s.full:
        best = max(
            (x for x in s.elements if not (current >> x) & 1),
            key=lambda x: (popcount(s.closure(current | (1 << x))), -x),
        )
        chosen.append(best)
        current = s.closure(current | (1 << best))
    return tuple(chosen)


def minimal_graphs(s: Semigroup, t: Semigroup, gens: Optional[Sequence[int]] = None) -> Iterator[RelationalMorphism]:
    """Relational morphisms generated by a function from ``gens`` to T.

    Every relational morphism S ⇸ T contains one of these graphs, so its
    nerve contains the nerve of one of them.

    Args:
        s: Domain
        t: Codomain
        gens: Generating set of S (default: :func:`greedy_generators`)

    Raises:
        NotGenerating: If ``gens`` does not generate S
    """
    gens = tuple(gens) if gens is not None else greedy_generators(s)
    if s.closure(mask_of(gens)) != s.full:
        raise NotGenerating(f"elements {list(gens)} do not generate the domain")
    pairs_semigroup = _pair_semigroup(s, t)
    m = t.order

    def generate() -> Iterator[RelationalMorphism]:
        for values in itertools.product(t.elements, repeat=len(gens)):
            seed = mask_of(a * m + v for a, v in zip(gens, values))
            closed = pairs_semigroup.closure(seed)
            yield RelationalMorphism(s, t, frozenset(divmod(z, m) for z in members(closed)))

    return generate()
