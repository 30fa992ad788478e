"""Membership predicates for the pseudovarieties pointlike_lab knows about.

A pseudovariety is named by a :class:`PseudovarietyId`; its members are
recognised by a direct structural test on the multiplication table.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple

from pointlike_lab.bitsets import is_singleton, members, popcount
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.enumeration import Dedup, enumerate_semigroups
from pointlike_lab.errors import ExpressionError, SizeCap
from pointlike_lab.semigroup import (
    GreenRelation,
    Semigroup,
    green_partition,
    length_k_products,
    power,
)


class PseudovarietyKind(Enum):
    TRIVIAL = "trivial"
    GROUPS = "groups"
    APERIODIC = "aperiodic"
    R_TRIVIAL = "r-trivial"
    L_TRIVIAL = "l-trivial"
    J_TRIVIAL = "j-trivial"
    SEMILATTICES = "semilattices"
    BANDS = "bands"
    COMMUTATIVE = "commutative"
    NILPOTENT = "nilpotent"
    DELAY_K = "delay"
    REVERSE_DELAY_K = "reverse-delay"
    LEFT_ZERO = "left-zero"
    RIGHT_ZERO = "right-zero"
    LOCALLY_TRIVIAL = "locally-trivial"
    UNIQUE_IDEMPOTENT = "unique-idempotent"


# NILPOTENT with k is N_k; without k it is the class of all nilpotent semigroups.
PARAMETERISED = (PseudovarietyKind.NILPOTENT, PseudovarietyKind.DELAY_K, PseudovarietyKind.REVERSE_DELAY_K)

_REVERSAL = {
    PseudovarietyKind.R_TRIVIAL: PseudovarietyKind.L_TRIVIAL,
    PseudovarietyKind.L_TRIVIAL: PseudovarietyKind.R_TRIVIAL,
    PseudovarietyKind.LEFT_ZERO: PseudovarietyKind.RIGHT_ZERO,
    PseudovarietyKind.RIGHT_ZERO: PseudovarietyKind.LEFT_ZERO,
    PseudovarietyKind.DELAY_K: PseudovarietyKind.REVERSE_DELAY_K,
    PseudovarietyKind.REVERSE_DELAY_K: PseudovarietyKind.DELAY_K,
}


@dataclass(frozen=True)
class PseudovarietyId:
    """A named pseudovariety, optionally with a length parameter ``k``.

    ``PseudovarietyId(NILPOTENT)`` is the class of nilpotent semigroups and
    ``PseudovarietyId(NILPOTENT, 2)`` is the class N_2 where all products of
    length 2 coincide.
    """

    kind: PseudovarietyKind
    k: Optional[int] = None

    def __post_init__(self):
        if self.k is not None:
            if self.kind not in PARAMETERISED:
                raise ExpressionError(f"pseudovariety '{self.kind.value}' takes no parameter")
            if self.k < 1:
                raise ExpressionError(f"parameter k must be at least 1, got {self.k}")
        elif self.kind in (PseudovarietyKind.DELAY_K, PseudovarietyKind.REVERSE_DELAY_K):
            raise ExpressionError(f"pseudovariety '{self.kind.value}' needs a parameter k")

    @property
    def name(self) -> str:
        if self.k is None:
            return self.kind.value
        return f"{self.kind.value}:{self.k}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "PseudovarietyId":
        """Parse names such as ``aperiodic``, ``nilpotent:3`` or ``delay:2``.

        Raises:
            ExpressionError: On an unknown name or a malformed parameter
        """
        name, _, param = text.strip().lower().partition(":")
        try:
            kind = PseudovarietyKind(name)
        except ValueError:
            known = ", ".join(sorted({kind.value for kind in PseudovarietyKind}))
            raise ExpressionError(f"unknown pseudovariety '{text}' (known: {known})")
        if not param:
            return cls(kind)
        try:
            k = int(param)
        except ValueError:
            raise ExpressionError(f"parameter of '{text}' is not an integer")
        return cls(kind, k)


def reversed_pseudovariety(pv: PseudovarietyId) -> PseudovarietyId:
    """V^rev = {S^rev : S ∈ V}."""
    return PseudovarietyId(_REVERSAL.get(pv.kind, pv.kind), pv.k)


def _is_group(s: Semigroup) -> bool:
    full = s.full
    return all(s.product(1 << x, full) == full and s.product(full, 1 << x) == full for x in s.elements)


def _green_trivial(s: Semigroup, rel: GreenRelation) -> bool:
    return all(is_singleton(c) for c in green_partition(s, rel))


def _is_commutative(s: Semigroup) -> bool:
    t = s.table
    return all(t[x][y] == t[y][x] for x in s.elements for y in range(x))


def _is_band(s: Semigroup) -> bool:
    return all(s.table[x][x] == x for x in s.elements)


def _zero_elements(s: Semigroup):
    t = s.table
    return [z for z in s.elements if all(t[z][x] == z and t[x][z] == z for x in s.elements)]


def pv_member(pv: PseudovarietyId, s: Semigroup) -> bool:
    """Decide whether S belongs to the pseudovariety.

    The empty semigroup belongs to every pseudovariety.
    """
    if s.order == 0:
        return True
    kind, t = pv.kind, s.table

    if kind is PseudovarietyKind.TRIVIAL:
        return s.order == 1
    if kind is PseudovarietyKind.GROUPS:
        return _is_group(s)
    if kind is PseudovarietyKind.APERIODIC:
        n = s.order
        return all(power(s, x, n) == power(s, x, n + 1) for x in s.elements)
    if kind is PseudovarietyKind.R_TRIVIAL:
        return _green_trivial(s, GreenRelation.R)
    if kind is PseudovarietyKind.L_TRIVIAL:
        return _green_trivial(s, GreenRelation.L)
    if kind is PseudovarietyKind.J_TRIVIAL:
        return _green_trivial(s, GreenRelation.J)
    if kind is PseudovarietyKind.SEMILATTICES:
        return _is_band(s) and _is_commutative(s)
    if kind is PseudovarietyKind.BANDS:
        return _is_band(s)
    if kind is PseudovarietyKind.COMMUTATIVE:
        return _is_commutative(s)
    if kind is PseudovarietyKind.NILPOTENT:
        if pv.k is not None:
            return popcount(length_k_products(s, pv.k)) == 1
        zeros = _zero_elements(s)
        return bool(zeros) and s.idempotents() == 1 << zeros[0]
    if kind is PseudovarietyKind.DELAY_K:
        products = length_k_products(s, pv.k)
        return all(t[y][p] == p for p in members(products) for y in s.elements)
    if kind is PseudovarietyKind.REVERSE_DELAY_K:
        products = length_k_products(s, pv.k)
        return all(t[p][y] == p for p in members(products) for y in s.elements)
    if kind is PseudovarietyKind.LEFT_ZERO:
        return all(t[x][y] == x for x in s.elements for y in s.elements)
    if kind is PseudovarietyKind.RIGHT_ZERO:
        return all(t[x][y] == y for x in s.elements for y in s.elements)
    if kind is PseudovarietyKind.LOCALLY_TRIVIAL:
        return all(
            all(t[t[e][x]][e] == e for x in s.elements)
            for e in members(s.idempotents())
        )
    return popcount(s.idempotents()) == 1


@lru_cache(maxsize=128)
def _members_up_to(pv: PseudovarietyId, k: int) -> Tuple[Semigroup, ...]:
    return tuple(
        s
        for n in range(1, k + 1)
        for s in enumerate_semigroups(n, Dedup.UP_TO_ISO, Limits(max_enumeration_order=k))
        if pv_member(pv, s)
    )


def pv_members(pv: PseudovarietyId, k: int, limits: Optional[Limits] = None) -> Tuple[Semigroup, ...]:
    """Members of the pseudovariety of order at most k, one per isomorphism class.

    Raises:
        SizeCap: If k exceeds the enumeration cap
    """
    limits = limits or get_limits()
    if k > limits.max_enumeration_order:
        raise SizeCap("codomain order bound", k, limits.max_enumeration_order)
    return _members_up_to(pv, max(k, 0))
