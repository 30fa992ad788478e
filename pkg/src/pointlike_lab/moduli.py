"""Moduli, context specifiers and the complex functors they induce.

A modulus assigns to every finite semigroup S a family Λ_S of subsets; a
context specifier assigns a family of subsemigroups. Both are expression
trees: builtin leaves combined by joins, conversions and restrictions.

The complex functor of Λ sends S to ⟨Λ_S⟩_S. Its monad completion iterates
"evaluate on the face semigroup, take unions, downward-close" until nothing
changes.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional

from pointlike_lab.bitsets import face_key, is_singleton, is_subset, members, nonempty_subsets
from pointlike_lab.complexes import (
    SComplex,
    complex_generate,
    downward_close,
    face_semigroup,
    singleton_complex,
)
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.errors import EmptyOperand, ExpressionError, SizeCap
from pointlike_lab.logging import get_logger
from pointlike_lab.pseudovarieties import (
    PseudovarietyId,
    PseudovarietyKind,
    pv_member,
    pv_members,
)
from pointlike_lab.relmorph import greedy_generators, minimal_graphs
from pointlike_lab.semigroup import (
    ElementKind,
    GreenRelation,
    Semigroup,
    SubsemigroupKind,
    element_sets,
    embed,
    green_partition,
    induced_subsemigroup,
    length_k_products,
    special_subsemigroups,
)

logger = get_logger(__name__)


class Modulus(ABC):
    """A rule assigning a family of subsets Λ_S to every semigroup S.

    Subclasses implement :meth:`_evaluate` and :meth:`expression`; results
    are memoised on the semigroup under the expression text and the limits
    they were computed with.
    """

    @abstractmethod
    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        pass

    @abstractmethod
    def expression(self) -> str:
        """Expression text, parseable by :func:`pointlike_lab.formats.parse_modulus`."""
        pass

    @property
    def is_approximate(self) -> bool:
        """Whether the value depends on a bounded over-approximation."""
        return False

    def evaluate(self, s: Semigroup, limits: Optional[Limits] = None) -> FrozenSet[int]:
        limits = limits or get_limits()
        return s.memo(("modulus", self.expression(), limits), lambda: self._evaluate(s, limits))

    def __str__(self) -> str:
        return self.expression()


class ContextSpecifier(ABC):
    """A rule assigning a family of subsemigroups 𝒪(S) to every semigroup S."""

    @abstractmethod
    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        pass

    @abstractmethod
    def expression(self) -> str:
        pass

    @property
    def is_approximate(self) -> bool:
        return False

    def evaluate(self, s: Semigroup, limits: Optional[Limits] = None) -> FrozenSet[int]:
        limits = limits or get_limits()
        return s.memo(("context", self.expression(), limits), lambda: self._evaluate(s, limits))

    def __str__(self) -> str:
        return self.expression()


class ModulusKind(Enum):
    GRP = "grp"
    CYCGRP = "cycgrp"
    RCL = "rcl"
    LCL = "lcl"
    JCL = "jcl"
    PRINR = "prinr"
    PRINL = "prinl"
    PRINJ = "prinj"
    PROD = "prod"
    SUFFIX = "suffix"
    PREFIX = "prefix"
    E = "e"
    REG = "reg"


WORD_MODULI = (ModulusKind.PROD, ModulusKind.SUFFIX, ModulusKind.PREFIX)


@dataclass(frozen=True)
class BuiltinModulus(Modulus):
    kind: ModulusKind
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind in WORD_MODULI:
            if self.k is None or self.k < 1:
                raise ExpressionError(f"modulus '{self.kind.value}' needs a parameter k >= 1")
        elif self.k is not None:
            raise ExpressionError(f"modulus '{self.kind.value}' takes no parameter")

    def expression(self) -> str:
        return self.kind.value if self.k is None else f"{self.kind.value}:{self.k}"

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        kind = self.kind
        if kind is ModulusKind.GRP:
            return frozenset(special_subsemigroups(s, SubsemigroupKind.SUBGROUPS))
        if kind is ModulusKind.CYCGRP:
            return frozenset(special_subsemigroups(s, SubsemigroupKind.CYCLIC_SUBGROUPS))
        if kind is ModulusKind.RCL:
            return frozenset(green_partition(s, GreenRelation.R))
        if kind is ModulusKind.LCL:
            return frozenset(green_partition(s, GreenRelation.L))
        if kind is ModulusKind.JCL:
            return frozenset(green_partition(s, GreenRelation.J))
        if kind is ModulusKind.PRINR:
            return frozenset(s.right_ideal(x) for x in s.elements)
        if kind is ModulusKind.PRINL:
            return frozenset(s.left_ideal(x) for x in s.elements)
        if kind is ModulusKind.PRINJ:
            return frozenset(s.two_sided_ideal(x) for x in s.elements)
        if kind in WORD_MODULI:
            if self.k > limits.max_word_length:
                raise SizeCap("word length", self.k, limits.max_word_length)
            words = length_k_products(s, self.k)
            if kind is ModulusKind.PROD:
                return frozenset([words])
            if kind is ModulusKind.SUFFIX:
                return frozenset(s.left_ideal(p) for p in members(words))
            return frozenset(s.right_ideal(p) for p in members(words))
        element_kind = ElementKind.IDEMPOTENTS if kind is ModulusKind.E else ElementKind.REGULAR
        found = element_sets(s, element_kind)
        return frozenset([found]) if found else frozenset()


@dataclass(frozen=True)
class JoinModulus(Modulus):
    left: Modulus
    right: Modulus

    def expression(self) -> str:
        return f"join({self.left.expression()},{self.right.expression()})"

    @property
    def is_approximate(self) -> bool:
        return self.left.is_approximate or self.right.is_approximate

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        return self.left.evaluate(s, limits) | self.right.evaluate(s, limits)


@dataclass(frozen=True)
class ContextModulus(Modulus):
    """A context specifier read as a modulus."""

    context: ContextSpecifier

    def expression(self) -> str:
        return self.context.expression()

    @property
    def is_approximate(self) -> bool:
        return self.context.is_approximate

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        return self.context.evaluate(s, limits)


@dataclass(frozen=True)
class RestrictedModulus(Modulus):
    """Λ|_𝒪 with (Λ|_𝒪)_S the union of Λ_U over U ∈ 𝒪(S)."""

    modulus: Modulus
    context: ContextSpecifier

    def expression(self) -> str:
        return f"restrict({self.modulus.expression()},{self.context.expression()})"

    @property
    def is_approximate(self) -> bool:
        return self.modulus.is_approximate or self.context.is_approximate

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        result = set()
        for u in self.context.evaluate(s, limits):
            sub, embedding = induced_subsemigroup(s, u)
            result.update(embed(x, embedding) for x in self.modulus.evaluate(sub, limits))
        return frozenset(result)


class ContextKind(Enum):
    GRP = "grp"
    CYCGRP = "cycgrp"
    LOC = "loc"
    EGEN = "egen"
    REGGEN = "reggen"
    FULL = "full"


_CONTEXT_FAMILIES = {
    ContextKind.GRP: SubsemigroupKind.SUBGROUPS,
    ContextKind.CYCGRP: SubsemigroupKind.CYCLIC_SUBGROUPS,
    ContextKind.LOC: SubsemigroupKind.LOCAL_MONOIDS,
    ContextKind.EGEN: SubsemigroupKind.IDEMPOTENT_GENERATED,
    ContextKind.REGGEN: SubsemigroupKind.REGULAR_GENERATED,
}


@dataclass(frozen=True)
class BuiltinContext(ContextSpecifier):
    kind: ContextKind

    def expression(self) -> str:
        return f"ctx:{self.kind.value}"

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        if self.kind is ContextKind.FULL:
            return frozenset([s.full]) if s.order else frozenset()
        return frozenset(special_subsemigroups(s, _CONTEXT_FAMILIES[self.kind]))


@dataclass(frozen=True)
class ModulusContext(ContextSpecifier):
    """⟨Λ⟩: the subsemigroups generated by the sets of a modulus."""

    modulus: Modulus

    def expression(self) -> str:
        return self.modulus.expression()

    @property
    def is_approximate(self) -> bool:
        return self.modulus.is_approximate

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        return frozenset(s.closure(x) for x in self.modulus.evaluate(s, limits))


@dataclass(frozen=True)
class EPApproxContext(ContextSpecifier):
    """Bounded approximation of the W-idempotent pointlike subsemigroups.

    A subsemigroup T qualifies when, for every minimal relational morphism ρ
    into a member of W of order at most ``max_codomain_order``, T lies in
    (e)ρ^-1 for some idempotent e. Fewer codomains than all of W means the
    family can only be too large.
    """

    pseudovariety: PseudovarietyId
    max_codomain_order: int

    def __post_init__(self):
        if self.max_codomain_order < 1:
            raise ExpressionError("epapprox codomain bound must be at least 1")

    def expression(self) -> str:
        return f"epapprox:{self.pseudovariety.name}:{self.max_codomain_order}"

    @property
    def is_approximate(self) -> bool:
        return True

    def _evaluate(self, s: Semigroup, limits: Limits) -> FrozenSet[int]:
        if s.order > limits.max_complex_base:
            raise SizeCap("semigroup order for epapprox", s.order, limits.max_complex_base)
        gens = greedy_generators(s)
        constraints = set()
        for v in pv_members(self.pseudovariety, self.max_codomain_order, limits):
            idempotents = list(members(v.idempotents()))
            for rho in minimal_graphs(s, v, gens):
                fibers = frozenset(f for f in (rho.inverse_image(e) for e in idempotents) if f)
                constraints.add(fibers)
        logger.debug(f"{self.expression()}: {len(constraints)} distinct idempotent fiber families")
        return frozenset(
            t for t in nonempty_subsets(s.order)
            if s.is_closed(t)
            and all(any(is_subset(t, f) for f in fibers) for fibers in constraints)
        )


def builtin_moduli(k: int = 2) -> List[Modulus]:
    """The thirteen builtin moduli, with word length ``k`` where needed."""
    return [
        BuiltinModulus(kind, k if kind in WORD_MODULI else None)
        for kind in ModulusKind
    ]


def builtin_contexts() -> List[ContextSpecifier]:
    return [BuiltinContext(kind) for kind in ContextKind]


_POINTS = {
    ModulusKind.GRP: PseudovarietyKind.APERIODIC,
    ModulusKind.CYCGRP: PseudovarietyKind.APERIODIC,
    ModulusKind.RCL: PseudovarietyKind.R_TRIVIAL,
    ModulusKind.LCL: PseudovarietyKind.L_TRIVIAL,
    ModulusKind.JCL: PseudovarietyKind.J_TRIVIAL,
    ModulusKind.PRINR: PseudovarietyKind.LEFT_ZERO,
    ModulusKind.PRINL: PseudovarietyKind.RIGHT_ZERO,
    ModulusKind.PRINJ: PseudovarietyKind.TRIVIAL,
    ModulusKind.PROD: PseudovarietyKind.NILPOTENT,
    ModulusKind.SUFFIX: PseudovarietyKind.DELAY_K,
    ModulusKind.PREFIX: PseudovarietyKind.REVERSE_DELAY_K,
    ModulusKind.E: PseudovarietyKind.UNIQUE_IDEMPOTENT,
    ModulusKind.REG: PseudovarietyKind.NILPOTENT,
}


def points_pseudovariety(modulus: Modulus) -> Optional[PseudovarietyId]:
    """The pseudovariety points(Λ), when it is one pointlike_lab can name.

    Joins of moduli with the same points keep them; anything else returns None.
    """
    if isinstance(modulus, BuiltinModulus):
        return PseudovarietyId(_POINTS[modulus.kind], modulus.k)
    if isinstance(modulus, JoinModulus):
        left, right = points_pseudovariety(modulus.left), points_pseudovariety(modulus.right)
        return left if left is not None and left == right else None
    return None


def _require_nonempty(s: Semigroup) -> None:
    if s.order == 0:
        raise EmptyOperand("moduli are evaluated on nonempty semigroups")


def eval_modulus(modulus: Modulus, s: Semigroup, limits: Optional[Limits] = None) -> List[int]:
    """Λ_S as a list of masks sorted by (size, mask)."""
    _require_nonempty(s)
    return sorted(modulus.evaluate(s, limits), key=face_key)


def eval_context(context: ContextSpecifier, s: Semigroup, limits: Optional[Limits] = None) -> List[int]:
    """𝒪(S) as a list of product-closed masks sorted by (size, mask)."""
    _require_nonempty(s)
    return sorted(context.evaluate(s, limits), key=face_key)


def restrict_modulus(modulus: Modulus, context: ContextSpecifier) -> Modulus:
    return RestrictedModulus(modulus, context)


def points_member(modulus: Modulus, s: Semigroup, limits: Optional[Limits] = None) -> bool:
    """Whether S is a point of Λ, i.e. Λ_S contains only singletons."""
    return all(is_singleton(x) for x in modulus.evaluate(s, limits))


def functor_value(modulus: Modulus, s: Semigroup, limits: Optional[Limits] = None) -> SComplex:
    """𝒞_Λ(S) = ⟨Λ_S⟩_S."""
    _require_nonempty(s)
    return complex_generate(s, modulus.evaluate(s, limits), limits)


def restricted_functor_value(
    modulus: Modulus, context: ContextSpecifier, s: Semigroup, limits: Optional[Limits] = None
) -> SComplex:
    """⟨⋃ 𝒞_Λ(U) over U ∈ 𝒪(S)⟩_S, computing 𝒞_Λ on each U separately."""
    _require_nonempty(s)
    family = []
    for u in context.evaluate(s, limits):
        sub, embedding = induced_subsemigroup(s, u)
        family.extend(embed(face, embedding) for face in functor_value(modulus, sub, limits).max_faces)
    return complex_generate(s, family, limits)


def refines(finer: Modulus, coarser: Modulus, s: Semigroup, limits: Optional[Limits] = None) -> bool:
    """Whether every set of the first modulus at S lies in a set of the second."""
    coarse = coarser.evaluate(s, limits)
    return all(any(is_subset(x, y) for y in coarse) for x in finer.evaluate(s, limits))


def _completion_levels(modulus: Modulus, s: Semigroup, limits: Limits) -> List[SComplex]:
    level = singleton_complex(s, limits)
    levels = [level]
    while True:
        q, faces = face_semigroup(level, limits)
        # ⋃ is a homomorphism P(Q) → P(S), so the unions of the faces of
        # ⟨Λ_Q⟩_Q generate the same complex as {⋃X : X ∈ Λ_Q} with level.
        unions = []
        for x in modulus.evaluate(q, limits):
            union = 0
            for i in members(x):
                union |= faces[i]
            unions.append(union)
        following = complex_generate(s, list(level.max_faces) + unions, limits)
        if following == level:
            return levels
        logger.debug(
            f"{modulus.expression()} level {len(levels)}: {following.face_count} faces"
        )
        level = following
        levels.append(level)


def completion_trace(modulus: Modulus, s: Semigroup, limits: Optional[Limits] = None) -> List[SComplex]:
    """The increasing levels of the monad completion; the last is the fixpoint.

    Raises:
        SizeCap: If a level has more faces than ``max_faces``
    """
    _require_nonempty(s)
    limits = limits or get_limits()
    return s.memo(("completion", modulus.expression(), limits), lambda: _completion_levels(modulus, s, limits))


def monad_completion(modulus: Modulus, s: Semigroup, limits: Optional[Limits] = None) -> SComplex:
    """The monad completion of 𝒞_Λ evaluated at S."""
    return completion_trace(modulus, s, limits)[-1]


def union_closure_step(modulus: Modulus, k: SComplex, limits: Optional[Limits] = None) -> SComplex:
    """ssc{⋃𝒜 : 𝒜 a face of 𝒞_Λ(Q)} for the face semigroup Q of K.

    Materialises 𝒞_Λ(Q) on the face semigroup itself, so it only suits
    complexes with few faces. The completion is exactly a fixpoint of this
    step.
    """
    q, faces = face_semigroup(k, limits)
    unions = set()
    for family in functor_value(modulus, q, limits).max_faces:
        union = 0
        for i in members(family):
            union |= faces[i]
        unions.add(union)
    return SComplex(k.base, downward_close(k.base, unions, limits))


def ctx_operator_member(
    context: ContextSpecifier, pv: PseudovarietyId, s: Semigroup, limits: Optional[Limits] = None
) -> bool:
    """Membership of S in 𝒪^-1[V]: every U ∈ 𝒪(S) belongs to V."""
    return all(
        pv_member(pv, induced_subsemigroup(s, u)[0])
        for u in context.evaluate(s, limits)
    )
