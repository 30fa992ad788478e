"""Finite semigroups as multiplication tables.

This module provides the :class:`Semigroup` and :class:`Morphism` values that
every other part of pointlike_lab is built on, together with structural
queries (Green's relations, idempotents, subgroups, congruences) and the
basic constructions (products, reversal, adjoining an identity).

Elements of a semigroup of order ``n`` are the indices ``0..n-1`` and subsets
are integer bitmasks (see :mod:`pointlike_lab.bitsets`). Composition is read
left to right: ``S.mul(x, y)`` is ``table[x][y]``, and a morphism is applied as
``phi.map[x]``.

Example:
    >>> z2 = validate_table(2, [[0, 1], [1, 0]])
    >>> generate_subsemigroup(z2, 0b10)
    3
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from pointlike_lab.bitsets import face_key, full_mask, mask_of, member_list, members
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.errors import (
    BaseMismatch,
    InvalidTable,
    NonAssociative,
    NotAHomomorphism,
    NotProductClosed,
    SizeCap,
)
from pointlike_lab.logging import get_logger

logger = get_logger(__name__)

Table = Tuple[Tuple[int, ...], ...]

# Setwise products and closures kept per semigroup; the oldest are dropped first.
MAX_CACHED_PRODUCTS = 1 << 16

# Table cells compared per step of the associativity check.
_ASSOCIATIVITY_CHUNK = 1 << 20


@dataclass(frozen=True)
class Semigroup:
    """A finite semigroup given by its multiplication table.

    Equality and hashing use the table only; labels are for display.
    Instances are immutable; derived data (Green ideals, modulus values) is
    memoised in a private cache that lives as long as the instance. Setwise
    products and closures go to a separate cache holding at most
    MAX_CACHED_PRODUCTS entries.
    """

    table: Table
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    _cache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _products: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def from_rows(cls, rows, labels: Optional[Sequence[str]] = None) -> "Semigroup":
        """Build a semigroup from any nested sequence (or 2-D array) of indices.

        No associativity check is made; use :func:`validate_table` for
        untrusted input.
        """
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        table = tuple(tuple(int(v) for v in row) for row in rows)
        return cls(table, tuple(labels) if labels is not None else None)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @property
    def full(self) -> int:
        return full_mask(len(self.table))

    @property
    def array(self) -> np.ndarray:
        arr = self._cache.get("array")
        if arr is None:
            arr = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
            self._cache["array"] = arr
        return arr

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, xs: int, ys: int) -> int:
        """Setwise product X·Y of two subsets (masks)."""
        key = ("product", xs, ys)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        result = 0
        table = self.table
        ys_list = member_list(ys)
        for x in members(xs):
            row = table[x]
            for y in ys_list:
                result |= 1 << row[y]
        self._remember(key, result)
        return result

    def closure(self, seed: int) -> int:
        """Smallest product-closed superset of ``seed``."""
        key = ("closure", seed)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        result = seed
        while True:
            grown = result | self.product(result, result)
            if grown == result:
                break
            result = grown
        self._remember(key, result)
        return result

    def _remember(self, key, value: int) -> None:
        if len(self._products) >= MAX_CACHED_PRODUCTS:
            del self._products[next(iter(self._products))]
        self._products[key] = value

    def is_closed(self, mask: int) -> bool:
        return self.product(mask, mask) & ~mask == 0

    def right_ideal(self, x: int) -> int:
        """x·S^I as a mask."""
        return (1 << x) | mask_of(self.table[x])

    def left_ideal(self, x: int) -> int:
        """S^I·x as a mask."""
        return (1 << x) | mask_of(row[x] for row in self.table)

    def two_sided_ideal(self, x: int) -> int:
        """S^I·x·S^I as a mask."""
        key = ("ideal", x)
        cached = self._cache.get(key)
        if cached is None:
            cached = 0
            for y in members(self.left_ideal(x)):
                cached |= self.right_ideal(y)
            self._cache[key] = cached
        return cached

    def idempotents(self) -> int:
        return mask_of(x for x in self.elements if self.table[x][x] == x)

    def memo(self, key, compute):
        """Return the value cached under ``key``, calling ``compute`` once."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def __str__(self) -> str:
        return f"Semigroup(order={self.order})"


def validate_table(
    order: int, table, labels: Optional[Sequence[str]] = None, limits: Optional[Limits] = None
) -> Semigroup:
    """Check a multiplication table and wrap it as a :class:`Semigroup`.

    Args:
        order: Number of elements n
        table: n×n nested sequence of element indices
        labels: Optional display labels, one per element
        limits: Caps (default: get_limits())

    Returns:
        The validated semigroup

    Raises:
        SizeCap: If the order exceeds ``max_product_order``
        InvalidTable: If the shape or entries are out of range
        NonAssociative: With the lexicographically first failing triple
    """
    if order < 0:
        raise InvalidTable(f"order must be nonnegative, got {order}")
    limits = limits or get_limits()
    if order > limits.max_product_order:
        raise SizeCap("semigroup order", order, limits.max_product_order)
    rows = [list(row) for row in table]
    if len(rows) != order or any(len(row) != order for row in rows):
        raise InvalidTable(f"table must be {order}x{order}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < order:
                raise InvalidTable(
                    f"entry ({i},{j}) = {v!r} is not an element index below {order}",
                    {"row": i, "column": j},
                )
    if labels is not None and len(labels) != order:
        raise InvalidTable(f"expected {order} labels, got {len(labels)}")

    semigroup = Semigroup.from_rows(rows, labels)
    if order:
        arr = semigroup.array
        step = max(1, _ASSOCIATIVITY_CHUNK // (order * order))
        for start in range(0, order, step):
            block = arr[start:start + step]
            # left[i, j, k] = (ij)k and right[i, j, k] = i(jk), i offset by start
            left = arr[block]
            right = block[:, arr]
            failures = np.argwhere(left != right)
            if len(failures):
                i, j, k = (int(v) for v in failures[0])
                raise NonAssociative(start + i, j, k)
    return semigroup


@dataclass(frozen=True)
class Morphism:
    """A homomorphism given by the images of the domain's elements."""

    dom: Semigroup
    cod: Semigroup
    map: Tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.dom.order:
            raise NotAHomomorphism(
                f"map has {len(self.map)} entries for a domain of order {self.dom.order}"
            )
        if any(not 0 <= v < self.cod.order for v in self.map):
            raise NotAHomomorphism("map sends an element outside the codomain")

    @classmethod
    def checked(cls, dom: Semigroup, cod: Semigroup, mapping: Sequence[int]) -> "Morphism":
        """Build a morphism after verifying the homomorphism law.

        Raises:
            NotAHomomorphism: With the first offending pair (x, y)
        """
        phi = cls(dom, cod, tuple(int(v) for v in mapping))
        for x in dom.elements:
            for y in dom.elements:
                if phi.map[dom.mul(x, y)] != cod.mul(phi.map[x], phi.map[y]):
                    raise NotAHomomorphism(
                        f"map is not multiplicative at ({x},{y})", {"pair": [x, y]}
                    )
        return phi

    @classmethod
    def identity(cls, semigroup: Semigroup) -> "Morphism":
        return cls(semigroup, semigroup, tuple(semigroup.elements))

    def then(self, other: "Morphism") -> "Morphism":
        """Left-to-right composite: apply ``self`` first, then ``other``."""
        if other.dom != self.cod:
            raise NotAHomomorphism("codomain of the first map is not the domain of the second")
        return Morphism(self.dom, other.cod, tuple(other.map[v] for v in self.map))

    def image(self, mask: int) -> int:
        result = 0
        for x in members(mask):
            result |= 1 << self.map[x]
        return result

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return set(self.map) == set(self.cod.elements)


def direct_product(s: Semigroup, t: Semigroup, limits: Optional[Limits] = None) -> Semigroup:
    """Direct product S×T with pair (i, j) encoded as ``i*|T| + j``.

    Raises:
        SizeCap: If |S|·|T| exceeds ``max_product_order``
    """
    limits = limits or get_limits()
    if s.order * t.order > limits.max_product_order:
        raise SizeCap("product order", s.order * t.order, limits.max_product_order)
    return product_table(s, t)


def product_table(s: Semigroup, t: Semigroup) -> Semigroup:
    """S×T without the size check, for callers whose factors are already bounded."""
    n, m = s.order, t.order
    if n * m == 0:
        return Semigroup(())
    a, b = s.array, t.array
    table = (a[:, None, :, None] * m + b[None, :, None, :]).reshape(n * m, n * m)
    labels = None
    if s.labels or t.labels:
        labels = [f"({s.label(i)},{t.label(j)})" for i in range(n) for j in range(m)]
    return Semigroup.from_rows(table, labels)


def projections(s: Semigroup, t: Semigroup, product: Optional[Semigroup] = None) -> Tuple[Morphism, Morphism]:
    """The two projection morphisms out of ``direct_product(s, t)``."""
    product = product if product is not None else direct_product(s, t)
    m = t.order
    first = Morphism(product, s, tuple(z // m for z in product.elements))
    second = Morphism(product, t, tuple(z % m for z in product.elements))
    return first, second


def reverse(s: Semigroup) -> Semigroup:
    """The reversed semigroup S^rev with x*y := yx."""
    if not s.order:
        return s
    return Semigroup.from_rows(s.array.T, s.labels)


def adjoin_identity(s: Semigroup) -> Semigroup:
    """S^I: adjoin a new identity element with index |S|."""
    n = s.order
    rows = [list(row) + [i] for i, row in enumerate(s.table)]
    rows.append(list(range(n + 1)))
    labels = list(s.labels) + ["I"] if s.labels else None
    return Semigroup.from_rows(rows, labels)


def permute(s: Semigroup, perm: Sequence[int]) -> Semigroup:
    """Relabel element x as perm[x]."""
    n = s.order
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            rows[perm[x]][perm[y]] = perm[s.table[x][y]]
    return Semigroup.from_rows(rows)


def generate_subsemigroup(s: Semigroup, seed: int) -> int:
    """Subsemigroup ⟨seed⟩ generated by a subset (masks in, mask out)."""
    return s.closure(seed)


class ElementKind(Enum):
    IDEMPOTENTS = "idempotents"
    REGULAR = "regular"
    GROUP_ELEMENTS = "group-elements"


class GreenRelation(Enum):
    R = "R"
    L = "L"
    J = "J"
    H = "H"


class SubsemigroupKind(Enum):
    SUBGROUPS = "subgroups"
    CYCLIC_SUBGROUPS = "cyclic-subgroups"
    LOCAL_MONOIDS = "local-monoids"
    IDEMPOTENT_GENERATED = "idempotent-generated"
    REGULAR_GENERATED = "regular-generated"


def element_sets(s: Semigroup, kind: ElementKind) -> int:
    """E(S), Reg(S) or the set of group elements, as a mask."""
    table = s.table
    if kind is ElementKind.IDEMPOTENTS:
        return s.idempotents()
    if kind is ElementKind.REGULAR:
        return mask_of(
            x for x in s.elements
            if any(table[table[x][y]][x] == x for y in s.elements)
        )
    # x is a group element iff x H x²
    return mask_of(
        x for x in s.elements
        if s.right_ideal(x) == s.right_ideal(table[x][x])
        and s.left_ideal(x) == s.left_ideal(table[x][x])
    )


def _partition_by(s: Semigroup, key) -> List[int]:
    classes: Dict = {}
    for x in s.elements:
        k = key(x)
        classes[k] = classes.get(k, 0) | (1 << x)
    return sorted(classes.values(), key=lambda m: (m & -m))


def green_partition(s: Semigroup, rel: GreenRelation) -> List[int]:
    """Green classes as masks, ordered by their least element."""
    if rel is GreenRelation.R:
        return _partition_by(s, s.right_ideal)
    if rel is GreenRelation.L:
        return _partition_by(s, s.left_ideal)
    if rel is GreenRelation.J:
        return _partition_by(s, s.two_sided_ideal)
    return _partition_by(s, lambda x: (s.right_ideal(x), s.left_ideal(x)))


def h_class(s: Semigroup, x: int) -> int:
    r, l = s.right_ideal(x), s.left_ideal(x)
    return mask_of(y for y in s.elements if s.right_ideal(y) == r and s.left_ideal(y) == l)


def _subgroups(s: Semigroup) -> List[int]:
    # Every subgroup lies in the maximal subgroup H_e of its identity e.
    found = set()
    for e in members(s.idempotents()):
        group = h_class(s, e)
        seen = {1 << e}
        frontier = [1 << e]
        while frontier:
            current = frontier.pop()
            for g in members(group & ~current):
                bigger = s.closure(current | (1 << g))
                if bigger not in seen:
                    seen.add(bigger)
                    frontier.append(bigger)
        found |= seen
    return sorted(found, key=face_key)


def special_subsemigroups(s: Semigroup, kind: SubsemigroupKind) -> List[int]:
    """Distinguished families of subsemigroups, sorted by (size, mask)."""
    if kind is SubsemigroupKind.SUBGROUPS:
        return _subgroups(s)
    if kind is SubsemigroupKind.CYCLIC_SUBGROUPS:
        found = {s.closure(1 << g) for g in members(element_sets(s, ElementKind.GROUP_ELEMENTS))}
        return sorted(found, key=face_key)
    if kind is SubsemigroupKind.LOCAL_MONOIDS:
        table = s.table
        found = {
            mask_of(table[table[e][x]][e] for x in s.elements)
            for e in members(s.idempotents())
        }
        return sorted(found, key=face_key)
    if kind is SubsemigroupKind.IDEMPOTENT_GENERATED:
        generators = s.idempotents()
    else:
        generators = element_sets(s, ElementKind.REGULAR)
    return [s.closure(generators)] if generators else []


def induced_subsemigroup(s: Semigroup, mask: int) -> Tuple[Semigroup, Tuple[int, ...]]:
    """Materialise a product-closed subset as a standalone semigroup.

    Returns:
        (U, embedding) where embedding[i] is the index in ``s`` of element i of U

    Raises:
        NotProductClosed: If ``mask`` is not closed under multiplication
    """
    if not s.is_closed(mask):
        raise NotProductClosed(f"subset {member_list(mask)} is not product-closed")
    embedding = tuple(member_list(mask))
    position = {x: i for i, x in enumerate(embedding)}
    rows = [[position[s.table[x][y]] for y in embedding] for x in embedding]
    labels = [s.label(x) for x in embedding] if s.labels else None
    return Semigroup.from_rows(rows, labels), embedding


def embed(mask: int, embedding: Sequence[int]) -> int:
    """Re-express a subset of a materialised subsemigroup in the parent's indices."""
    result = 0
    for x in members(mask):
        result |= 1 << embedding[x]
    return result


def fiber_subsemigroup(
    phi1: Morphism, phi2: Morphism, limits: Optional[Limits] = None
) -> Tuple[Semigroup, Tuple[int, ...]]:
    """The fiber product S1 ×_T S2 = {(s1, s2) : s1φ1 = s2φ2}.

    Returns:
        (F, embedding) with embedding[i] the index of element i of F inside
        ``direct_product(phi1.dom, phi2.dom)``
    """
    if phi1.cod != phi2.cod:
        raise BaseMismatch("fiber product needs morphisms into a common codomain")
    m = phi2.dom.order
    product = direct_product(phi1.dom, phi2.dom, limits)
    mask = mask_of(
        s1 * m + s2
        for s1 in phi1.dom.elements
        for s2 in phi2.dom.elements
        if phi1.map[s1] == phi2.map[s2]
    )
    return induced_subsemigroup(product, mask)


def power(s: Semigroup, x: int, k: int) -> int:
    result = x
    for _ in range(k - 1):
        result = s.table[result][x]
    return result


def length_k_products(s: Semigroup, k: int) -> int:
    """The set {x1 x2 ... xk} of all products of length k, as a mask."""
    result = s.full
    for _ in range(k - 1):
        result = s.product(result, s.full)
    return result


@dataclass(frozen=True)
class Congruence:
    """A congruence with its quotient and the canonical surjection."""

    partition: Tuple[int, ...]
    quotient: Semigroup
    morphism: Morphism


def _set_partitions(n: int) -> Iterator[List[int]]:
    # restricted growth strings: labels[i] <= 1 + max(labels[:i])
    labels = [0] * n

    def extend(i: int, top: int):
        if i == n:
            yield list(labels)
            return
        for c in range(top + 2):
            labels[i] = c
            yield from extend(i + 1, max(top, c))

    if n == 0:
        yield []
        return
    yield from extend(1, 0)


def congruences_and_quotients(s: Semigroup, limits: Optional[Limits] = None) -> List[Congruence]:
    """All congruences of S with quotient tables and surjections.

    Raises:
        SizeCap: If |S| exceeds ``max_congruence_order``
    """
    limits = limits or get_limits()
    if s.order > limits.max_congruence_order:
        raise SizeCap("semigroup order for congruence search", s.order, limits.max_congruence_order)

    table = s.table
    result = []
    for labels in _set_partitions(s.order):
        compatible = True
        for a in s.elements:
            for b in range(a + 1, s.order):
                if labels[a] != labels[b]:
                    continue
                for y in s.elements:
                    if labels[table[a][y]] != labels[table[b][y]] or labels[table[y][a]] != labels[table[y][b]]:
                        compatible = False
                        break
                if not compatible:
                    break
            if not compatible:
                break
        if not compatible:
            continue

        count = max(labels) + 1 if labels else 0
        reps = [labels.index(c) for c in range(count)]
        quotient = Semigroup.from_rows(
            [[labels[table[reps[c]][reps[d]]] for d in range(count)] for c in range(count)]
        )
        partition = tuple(mask_of(x for x in s.elements if labels[x] == c) for c in range(count))
        result.append(Congruence(partition, quotient, Morphism(s, quotient, tuple(labels))))

    logger.debug(f"Found {len(result)} congruences on a semigroup of order {s.order}")
    return result


def homomorphisms(s: Semigroup, t: Semigroup) -> Iterator[Morphism]:
    """Every homomorphism S → T, in lexicographic order of the image tuple."""
    n = s.order
    assignment = [-1] * n
    s_table, t_table = s.table, t.table

    def consistent(x: int) -> bool:
        for a in range(x + 1):
            for b in range(x + 1):
                if a != x and b != x:
                    continue
                ab = s_table[a][b]
                if assignment[ab] >= 0 and assignment[ab] != t_table[assignment[a]][assignment[b]]:
                    return False
        # pairs already assigned whose product is x
        for a in range(x):
            for b in range(x):
                if s_table[a][b] == x and t_table[assignment[a]][assignment[b]] != assignment[x]:
                    return False
        return True

    def extend(x: int):
        if x == n:
            yield Morphism(s, t, tuple(assignment))
            return
        for v in t.elements:
            assignment[x] = v
            if consistent(x):
                yield from extend(x + 1)
        assignment[x] = -1

    yield from extend(0)


def trivial_semigroup() -> Semigroup:
    return Semigroup.from_rows([[0]])


def cyclic_group(n: int) -> Semigroup:
    return Semigroup.from_rows([[(i + j) % n for j in range(n)] for i in range(n)])


def left_zero(n: int) -> Semigroup:
    return Semigroup.from_rows([[i] * n for i in range(n)])


def right_zero(n: int) -> Semigroup:
    return Semigroup.from_rows([list(range(n)) for _ in range(n)])


def null_semigroup(n: int) -> Semigroup:
    return Semigroup.from_rows([[0] * n for _ in range(n)])


def chain_semilattice(n: int) -> Semigroup:
    """The chain 0 < 1 < ... < n-1 under minimum."""
    return Semigroup.from_rows([[min(i, j) for j in range(n)] for i in range(n)])
