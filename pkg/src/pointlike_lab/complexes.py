"""Semigroup complexes.

An S-complex is a family of nonempty subsets of S (its faces) that contains
every singleton, is closed under nonempty subsets and under the setwise
product. Faces are bitmasks; a complex keeps the full face set and derives the
antichain of maximal faces on demand. Because complexes are downward closed,
most operations here work on maximal faces only and downward-close at the end.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from pointlike_lab.bitsets import (
    face_key,
    image,
    is_subset,
    member_list,
    members,
    nonempty_subsets,
    singletons,
    submasks,
)
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.errors import (
    BaseMismatch,
    EmptyOperand,
    MorphismConditionViolated,
    SizeCap,
)
from pointlike_lab.logging import debug_mode_enabled, get_logger
from pointlike_lab.semigroup import (
    Morphism,
    Semigroup,
    direct_product,
    fiber_subsemigroup,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class SComplex:
    """An S-complex over ``base``; ``faces`` holds every face as a mask."""

    base: Semigroup
    faces: FrozenSet[int]

    @cached_property
    def max_faces(self) -> Tuple[int, ...]:
        """The ⊆-maximal faces, sorted by (size, mask)."""
        return maximal_elements(self.faces)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def __contains__(self, face: int) -> bool:
        return face in self.faces

    def __le__(self, other: "SComplex") -> bool:
        return self.base == other.base and self.faces <= other.faces

    def __lt__(self, other: "SComplex") -> bool:
        return self.base == other.base and self.faces < other.faces

    def is_singleton_complex(self) -> bool:
        return self.face_count == self.base.order

    def check_invariants(self) -> List[str]:
        """Describe every violated S-complex condition (empty when valid)."""
        problems = []
        full = self.base.full
        for face in self.faces:
            if face == 0 or not is_subset(face, full):
                problems.append(f"face {face:#b} is not a nonempty subset of the base")
        for x in singletons(self.base.order):
            if x not in self.faces:
                problems.append(f"singleton {member_list(x)} is missing")
        for face in self.max_faces:
            for sub in submasks(face):
                if sub not in self.faces:
                    problems.append(f"{member_list(sub)} is below a face but missing")
                    break
        for a in self.max_faces:
            for b in self.max_faces:
                if self.base.product(a, b) not in self.faces:
                    problems.append(f"product of {member_list(a)} and {member_list(b)} is not a face")
        return problems


def maximal_elements(family: Iterable[int]) -> Tuple[int, ...]:
    """The ⊆-maximal members of a family of masks, sorted by (size, mask)."""
    kept: List[int] = []
    for face in sorted(set(family), key=face_key, reverse=True):
        if not any(is_subset(face, bigger) for bigger in kept):
            kept.append(face)
    return tuple(sorted(kept, key=face_key))


def _require_base(s: Semigroup, limits: Limits) -> None:
    if s.order == 0:
        raise EmptyOperand("complexes need a nonempty base semigroup")
    if s.order > limits.max_complex_base:
        raise SizeCap("complex base order", s.order, limits.max_complex_base)


def setwise_product(s: Semigroup, xs: int, ys: int) -> int:
    """X·Y = {xy : x ∈ X, y ∈ Y} for nonempty X and Y.

    Raises:
        EmptyOperand: If either operand is empty
    """
    if xs == 0 or ys == 0:
        raise EmptyOperand("setwise product of an empty subset")
    return s.product(xs, ys)


def downward_close(s: Semigroup, family: Iterable[int], limits: Optional[Limits] = None) -> FrozenSet[int]:
    """Every nonempty subset of some member of ``family``.

    Raises:
        SizeCap: If the result would exceed ``max_faces``
    """
    limits = limits or get_limits()
    result: Set[int] = set()
    for face in maximal_elements(f for f in family if f):
        result.update(submasks(face))
        if len(result) > limits.max_faces:
            raise SizeCap("face count", len(result), limits.max_faces)
    return frozenset(result)


def _product_saturate(s: Semigroup, antichain: Iterable[int]) -> Tuple[int, ...]:
    # Maximal faces of ⟨X⟩_S: add products of maximal faces until every
    # product lies under some maximal face.
    current = maximal_elements(antichain)
    while True:
        products = {s.product(a, b) for a in current for b in current}
        fresh = [p for p in products if not any(is_subset(p, m) for m in current)]
        if not fresh:
            return current
        current = maximal_elements(list(current) + fresh)


def complex_generate(s: Semigroup, family: Iterable[int], limits: Optional[Limits] = None) -> SComplex:
    """The S-complex ⟨X⟩_S generated by a family of subsets.

    Args:
        s: Base semigroup (nonempty)
        family: Generating subsets as masks
        limits: Caps (default: get_limits())

    Returns:
        Least S-complex containing every member of ``family``

    Raises:
        EmptyOperand: If S is empty
        SizeCap: If S or the face count exceed the configured caps
    """
    limits = limits or get_limits()
    _require_base(s, limits)
    seeds = [f for f in family if f] + singletons(s.order)
    top = _product_saturate(s, seeds)
    result = SComplex(s, downward_close(s, top, limits))
    if debug_mode_enabled():
        problems = result.check_invariants()
        assert not problems, problems
    return result


def singleton_complex(s: Semigroup, limits: Optional[Limits] = None) -> SComplex:
    """sing(S), the least S-complex."""
    limits = limits or get_limits()
    _require_base(s, limits)
    return SComplex(s, frozenset(singletons(s.order)))


def power_complex(s: Semigroup, limits: Optional[Limits] = None) -> SComplex:
    """P(S), the greatest S-complex."""
    limits = limits or get_limits()
    _require_base(s, limits)
    count = (1 << s.order) - 1
    if count > limits.max_faces:
        raise SizeCap("face count", count, limits.max_faces)
    return SComplex(s, frozenset(nonempty_subsets(s.order)))


class LatticeOp(Enum):
    MEET = "meet"
    JOIN = "join"


def complex_lattice(op: LatticeOp, k1: SComplex, k2: SComplex, limits: Optional[Limits] = None) -> SComplex:
    """Meet (intersection) or join (generated union) of two complexes.

    Raises:
        BaseMismatch: If the complexes live over different semigroups
    """
    if k1.base != k2.base:
        raise BaseMismatch("complexes have different base semigroups")
    if op is LatticeOp.MEET:
        return SComplex(k1.base, k1.faces & k2.faces)
    return complex_generate(k1.base, k1.max_faces + k2.max_faces, limits)


def meet_all(complexes: Iterable[SComplex]) -> SComplex:
    """Meet of a nonempty collection of complexes over one base."""
    result = None
    for k in complexes:
        result = k if result is None else complex_lattice(LatticeOp.MEET, result, k)
    if result is None:
        raise EmptyOperand("meet of no complexes")
    return result


class Direction(Enum):
    PUSHFORWARD = "pushforward"
    PULLBACK = "pullback"


def transport(phi: Morphism, direction: Direction, k: SComplex, limits: Optional[Limits] = None) -> SComplex:
    """Move a complex along a morphism.

    Pushforward φ_* sends a complex over dom(φ) to the complex over cod(φ)
    generated by the images of its faces. Pullback φ^* sends a complex over
    cod(φ) to {X : Xφ is a face}. φ_* is lower adjoint to φ^*.

    Raises:
        BaseMismatch: If ``k`` does not live over the matching end of φ
    """
    if direction is Direction.PUSHFORWARD:
        if k.base != phi.dom:
            raise BaseMismatch("pushforward needs a complex over the domain")
        return complex_generate(phi.cod, (image(face, phi.map) for face in k.max_faces), limits)

    if k.base != phi.cod:
        raise BaseMismatch("pullback needs a complex over the codomain")
    # Xφ ⊆ M for a maximal face M iff X ⊆ Mφ^-1
    preimages = [
        sum(1 << x for x in phi.dom.elements if (face >> phi.map[x]) & 1)
        for face in k.max_faces
    ]
    return SComplex(phi.dom, downward_close(phi.dom, preimages, limits))


def is_complex_morphism(phi: Morphism, k_s: SComplex, k_t: SComplex) -> bool:
    """Whether φ maps every face of K_S onto a face of K_T."""
    if k_s.base != phi.dom or k_t.base != phi.cod:
        raise BaseMismatch("complexes do not match the morphism's domain and codomain")
    return all(image(face, phi.map) in k_t.faces for face in k_s.max_faces)


@dataclass(frozen=True)
class FiberData:
    """Cospan K1 → L ← K2 for the fiber product of complexes."""

    phi1: Morphism
    phi2: Morphism
    target: SComplex


def complex_product(
    k1: SComplex,
    k2: SComplex,
    fiber: Optional[FiberData] = None,
    limits: Optional[Limits] = None,
) -> SComplex:
    """K1 ⊗ K2, or the fiber product K1 ⊗_L K2 when ``fiber`` is given.

    Faces are the subsets Z of the (fiber) product whose projections are
    faces of K1 and K2. In the fiber case the base is the subsemigroup
    {(s1, s2) : s1φ1 = s2φ2}, indexed as returned by
    :func:`~pointlike_lab.semigroup.fiber_subsemigroup`.

    Raises:
        BaseMismatch: If the cospan does not match the complexes
        MorphismConditionViolated: If φ1 or φ2 is not a morphism of complexes
        SizeCap: If the product exceeds a configured cap
    """
    limits = limits or get_limits()
    s1, s2 = k1.base, k2.base
    m = s2.order

    def box(a: int, b: int) -> int:
        return sum(1 << (x * m + y) for x in members(a) for y in members(b))

    boxes = [box(a, b) for a in k1.max_faces for b in k2.max_faces]

    if fiber is None:
        base = direct_product(s1, s2, limits)
        _require_base(base, limits)
        return SComplex(base, downward_close(base, boxes, limits))

    if fiber.phi1.dom != s1 or fiber.phi2.dom != s2:
        raise BaseMismatch("fiber morphisms must start at the bases of the two complexes")
    if fiber.phi1.cod != fiber.target.base or fiber.phi2.cod != fiber.target.base:
        raise BaseMismatch("fiber morphisms must end at the base of the target complex")
    for phi, k in ((fiber.phi1, k1), (fiber.phi2, k2)):
        if not is_complex_morphism(phi, k, fiber.target):
            raise MorphismConditionViolated("fiber morphism sends a face outside the target complex")

    base, embedding = fiber_subsemigroup(fiber.phi1, fiber.phi2, limits)
    _require_base(base, limits)
    position = {z: i for i, z in enumerate(embedding)}
    restricted = []
    for b in boxes:
        restricted.append(sum(1 << position[z] for z in members(b) if z in position))
    return SComplex(base, downward_close(base, restricted, limits))


def enumerate_complexes(s: Semigroup, limits: Optional[Limits] = None) -> List[SComplex]:
    """Every S-complex, sorted by face count and then by faces.

    Raises:
        SizeCap: If S is larger than the enumeration cap
    """
    limits = limits or get_limits()
    if s.order > limits.max_enumeration_order:
        raise SizeCap("complex lattice base order", s.order, limits.max_enumeration_order)
    bottom = singleton_complex(s, limits)
    seen = {bottom.faces: bottom}
    frontier = [bottom]
    while frontier:
        current = frontier.pop()
        for x in nonempty_subsets(s.order):
            if x in current.faces:
                continue
            bigger = complex_generate(s, current.max_faces + (x,), limits)
            if bigger.faces not in seen:
                seen[bigger.faces] = bigger
                frontier.append(bigger)
    logger.debug(f"Complex lattice over a semigroup of order {s.order} has {len(seen)} elements")
    return sorted(seen.values(), key=lambda k: (k.face_count, sorted(k.faces)))


def face_semigroup(k: SComplex, limits: Optional[Limits] = None) -> Tuple[Semigroup, Tuple[int, ...]]:
    """The subsemigroup of P(S) formed by the faces of K.

    Returns:
        (Q, faces) where element i of Q is the face ``faces[i]``; faces are
        in (size, mask) order so singletons come first

    Raises:
        SizeCap: If K has more faces than ``max_faces``
    """
    limits = limits or get_limits()
    if k.face_count > limits.max_faces:
        raise SizeCap("face count", k.face_count, limits.max_faces)
    faces = tuple(sorted(k.faces, key=face_key))
    index = {face: i for i, face in enumerate(faces)}
    s = k.base
    rows = [[index[s.product(a, b)] for b in faces] for a in faces]
    return Semigroup.from_rows(rows), faces
