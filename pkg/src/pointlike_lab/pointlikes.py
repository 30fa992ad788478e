"""Pointlike sets: a bounded oracle, modulus lower bounds and certificates.

``oracle_pointlikes`` intersects the nerves of relational morphisms into small
members of a pseudovariety. Only codomains up to a bound are tried, so the
result is an upper bound for PL_V(S). ``lower_bound`` uses the monad
completion of a modulus whose points contain V. When the two agree the value
is certified exact.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from pointlike_lab.complexes import SComplex, power_complex
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.enumeration import Dedup, enumerate_semigroups
from pointlike_lab.errors import ExpressionError, PointsMismatch
from pointlike_lab.logging import get_logger
from pointlike_lab.moduli import (
    ContextSpecifier,
    Modulus,
    ctx_operator_member,
    monad_completion,
    points_member,
    points_pseudovariety,
    restrict_modulus,
)
from pointlike_lab.pseudovarieties import (
    PseudovarietyId,
    pv_members,
    reversed_pseudovariety,
)
from pointlike_lab.relmorph import RelationalMorphism, greedy_generators, minimal_graphs, nerve
from pointlike_lab.semigroup import Semigroup, reverse

logger = get_logger(__name__)

__all__ = [
    "Certificate",
    "FptcReport",
    "OracleResult",
    "certify_exact",
    "fptc_check",
    "lower_bound",
    "oracle_pointlikes",
    "pv_members",
    "reversal_transfer_check",
]


@dataclass(frozen=True)
class OracleResult:
    """Upper bound for PL_V(S) from codomains of order at most ``codomain_bound``."""

    value: SComplex
    pseudovariety: PseudovarietyId
    codomain_bound: int
    codomains_used: int
    graphs_intersected: int
    witness: Optional[RelationalMorphism] = None


@dataclass(frozen=True)
class Certificate:
    """A squeeze lower ⊆ PL_V(S) ⊆ upper; exact when the two sides agree."""

    semigroup: Semigroup
    pseudovariety: PseudovarietyId
    modulus: Modulus
    lower: SComplex
    upper: OracleResult

    @property
    def exact(self) -> bool:
        return self.lower == self.upper.value

    @property
    def approximate(self) -> bool:
        return self.modulus.is_approximate


def oracle_pointlikes(
    s: Semigroup, pv: PseudovarietyId, k: int, limits: Optional[Limits] = None
) -> OracleResult:
    """Intersect nerves over every minimal graph into members of V of order ≤ k.

    Args:
        s: Semigroup (nonempty)
        pv: Pseudovariety V
        k: Largest codomain order tried
        limits: Caps (default: get_limits())

    Returns:
        OracleResult whose value contains PL_V(S)

    Raises:
        SizeCap: If k exceeds the enumeration cap
    """
    limits = limits or get_limits()
    codomains = pv_members(pv, k, limits)
    gens = greedy_generators(s)
    faces: FrozenSet[int] = power_complex(s, limits).faces
    first_graph: Dict[FrozenSet[int], RelationalMorphism] = {}
    graphs = 0

    for t in codomains:
        for rho in minimal_graphs(s, t, gens):
            graphs += 1
            nerve_faces = nerve(rho, limits).faces
            first_graph.setdefault(nerve_faces, rho)
            faces = faces & nerve_faces

    logger.info(
        f"Oracle for {pv.name} at bound {k}: {len(codomains)} codomains, "
        f"{graphs} graphs, {len(faces)} faces"
    )
    return OracleResult(
        value=SComplex(s, faces),
        pseudovariety=pv,
        codomain_bound=k,
        codomains_used=len(codomains),
        graphs_intersected=graphs,
        witness=first_graph.get(faces),
    )


def lower_bound(s: Semigroup, modulus: Modulus, limits: Optional[Limits] = None) -> SComplex:
    """Monad completion of 𝒞_Λ at S, a lower bound for PL_V(S) when V ⊆ points(Λ)."""
    return monad_completion(modulus, s, limits)


def certify_exact(
    s: Semigroup, pv: PseudovarietyId, modulus: Modulus, k: int, limits: Optional[Limits] = None
) -> Certificate:
    """Squeeze PL_V(S) between a modulus lower bound and the oracle.

    Raises:
        PointsMismatch: If some member of V of order ≤ k is not a point of Λ
    """
    limits = limits or get_limits()
    for t in pv_members(pv, k, limits):
        if not points_member(modulus, t, limits):
            raise PointsMismatch(
                f"a member of {pv.name} of order {t.order} is not a point of {modulus.expression()}",
                {"table": [list(row) for row in t.table]},
            )
    return Certificate(
        semigroup=s,
        pseudovariety=pv,
        modulus=modulus,
        lower=lower_bound(s, modulus, limits),
        upper=oracle_pointlikes(s, pv, k, limits),
    )


def reversal_transfer_check(s: Semigroup, pv: PseudovarietyId, k: int, limits: Optional[Limits] = None) -> bool:
    """Compare the oracle for V^rev at S with the oracle for V at S^rev.

    Faces are subsets of the same element set on both sides.
    """
    direct = oracle_pointlikes(s, reversed_pseudovariety(pv), k, limits)
    mirrored = oracle_pointlikes(reverse(s), pv, k, limits)
    return direct.value.faces == mirrored.value.faces


@dataclass(frozen=True)
class FptcReport:
    """Outcome of a fixed-point transfer search up to ``order``."""

    context: str
    modulus: str
    pseudovariety: PseudovarietyId
    order: int
    checked: int
    counterexamples: List[List[List[int]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def fptc_check(
    context: ContextSpecifier, modulus: Modulus, order: int = 4, limits: Optional[Limits] = None
) -> FptcReport:
    """Search for S with points(Λ|_𝒪) ∋ S differing from 𝒪^-1[points(Λ)] ∋ S.

    Raises:
        ExpressionError: If points(Λ) is not a named pseudovariety
    """
    limits = limits or get_limits()
    pv = points_pseudovariety(modulus)
    if pv is None:
        raise ExpressionError(f"points of {modulus.expression()} are not a named pseudovariety")
    restricted = restrict_modulus(modulus, context)
    checked = 0
    counterexamples = []
    for n in range(1, order + 1):
        for s in enumerate_semigroups(n, Dedup.UP_TO_ISO, limits):
            checked += 1
            if points_member(restricted, s, limits) != ctx_operator_member(context, pv, s, limits):
                counterexamples.append([list(row) for row in s.table])
    if counterexamples:
        logger.warning(f"FPTC for ({context}, {modulus}) failed on {len(counterexamples)} semigroups")
    return FptcReport(
        context=context.expression(),
        modulus=modulus.expression(),
        pseudovariety=pv,
        order=order,
        checked=checked,
        counterexamples=counterexamples,
    )
