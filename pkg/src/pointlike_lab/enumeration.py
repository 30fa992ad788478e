"""Exhaustive enumeration of small semigroups.

Tables are filled cell by cell in row-major order; after each assignment only
the associativity triples that involve the new cell are re-checked. When
deduplicating, a partial table is also dropped as soon as some relabeling
(or reversed relabeling) makes its filled prefix lexicographically smaller,
so only canonical forms are ever completed. Results are memoised per
(order, dedup mode) and emitted in backtracking order, which is ascending
row-major order.

Order 5 explores far more branches than order 4 and is the slow case, raw
tables most of all; each result is computed once per process.
"""

import itertools
from enum import Enum
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np

from pointlike_lab.config import Limits, get_limits
from pointlike_lab.errors import InvalidTable, SizeCap
from pointlike_lab.logging import get_logger
from pointlike_lab.semigroup import Semigroup

logger = get_logger(__name__)


class Dedup(Enum):
    UP_TO_ISO = "iso"
    UP_TO_ISO_ANTI = "iso-anti"
    RAW = "raw"


@lru_cache(maxsize=None)
def _relabelings(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All permutations of n points, their inverses, and base-n digit weights."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    inverses = np.argsort(perms, axis=1)
    weights = n ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    return perms, inverses, weights


def _minimal_relabeling(arr: np.ndarray) -> Tuple[int, np.ndarray]:
    n = arr.shape[0]
    perms, inverses, weights = _relabelings(n)
    # relabel x as p[x]: new[a, b] = p[old[p^-1 a, p^-1 b]]
    old = arr[inverses[:, :, None], inverses[:, None, :]].reshape(len(perms), n * n)
    relabeled = np.take_along_axis(perms, old, axis=1)
    codes = relabeled @ weights
    best = int(np.argmin(codes))
    return int(codes[best]), relabeled[best]


def canonical_form(s: Semigroup, anti: bool = False) -> Tuple[int, ...]:
    """Lexicographically least row-major table over all relabelings.

    Args:
        s: Semigroup to canonicalise
        anti: Also minimise over the reversed table

    Returns:
        Flattened canonical table
    """
    if s.order == 0:
        return ()
    return _canonical_of_array(s.array, anti)


def _canonical_of_array(arr: np.ndarray, anti: bool) -> Tuple[int, ...]:
    code, table = _minimal_relabeling(arr)
    if anti:
        anti_code, anti_table = _minimal_relabeling(arr.T)
        if anti_code < code:
            table = anti_table
    return tuple(int(v) for v in table)


def is_isomorphic(s: Semigroup, t: Semigroup) -> bool:
    return s.order == t.order and canonical_form(s) == canonical_form(t)


@lru_cache(maxsize=None)
def _symmetries(n: int, anti: bool) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]:
    """Non-identity relabelings as (perm, sources) pairs.

    Cell ``pos`` of the relabeled table is ``perm[table[sources[pos]]]``.
    With ``anti`` the relabelings of the reversed table are included too.
    """
    found = []
    for perm in itertools.permutations(range(n)):
        inverse = sorted(range(n), key=perm.__getitem__)
        for transposed in ((False, True) if anti else (False,)):
            if not transposed and perm == tuple(range(n)):
                continue
            if transposed:
                sources = tuple(inverse[b] * n + inverse[a] for a in range(n) for b in range(n))
            else:
                sources = tuple(inverse[a] * n + inverse[b] for a in range(n) for b in range(n))
            found.append((perm, sources))
    return tuple(found)


def _fill_tables(n: int, symmetries: Tuple = ()) -> Iterator[Tuple[int, ...]]:
    cells = n * n
    table = [-1] * cells

    def consistent(i: int, j: int) -> bool:
        v = table[i * n + j]
        # (i j) c against i (j c)
        for c in range(n):
            left = table[v * n + c]
            jc = table[j * n + c]
            if left >= 0 and jc >= 0:
                right = table[i * n + jc]
                if right >= 0 and right != left:
                    return False
        # (a i) j against a (i j)
        for a in range(n):
            right = table[a * n + v]
            ai = table[a * n + i]
            if right >= 0 and ai >= 0:
                left = table[ai * n + j]
                if left >= 0 and left != right:
                    return False
        # cell (i, j) read as (ab)c with ab = i
        for a in range(n):
            for b in range(n):
                if table[a * n + b] != i:
                    continue
                bj = table[b * n + j]
                if bj >= 0:
                    right = table[a * n + bj]
                    if right >= 0 and right != v:
                        return False
        # cell (i, j) read as a(bc) with bc = j
        for b in range(n):
            for c in range(n):
                if table[b * n + c] != j:
                    continue
                ib = table[i * n + b]
                if ib >= 0:
                    left = table[ib * n + c]
                    if left >= 0 and left != v:
                        return False
        return True

    def is_leader(cell: int) -> bool:
        for perm, sources in symmetries:
            for pos in range(cell + 1):
                source = table[sources[pos]]
                if source < 0:
                    break
                moved = perm[source]
                if moved != table[pos]:
                    if moved < table[pos]:
                        return False
                    break
        return True

    def extend(cell: int):
        if cell == cells:
            yield tuple(table)
            return
        i, j = divmod(cell, n)
        for v in range(n):
            table[cell] = v
            if consistent(i, j) and is_leader(cell):
                yield from extend(cell + 1)
        table[cell] = -1

    yield from extend(0)


@lru_cache(maxsize=None)
def _tables(n: int, dedup: Dedup) -> Tuple[Tuple[int, ...], ...]:
    if dedup is Dedup.RAW:
        result = tuple(_fill_tables(n))
    else:
        result = tuple(_fill_tables(n, _symmetries(n, dedup is Dedup.UP_TO_ISO_ANTI)))
    logger.info(f"Enumerated {len(result)} semigroups of order {n} ({dedup.value})")
    return result


def enumerate_semigroups(n: int, dedup: Dedup = Dedup.UP_TO_ISO, limits: Optional[Limits] = None) -> Iterator[Semigroup]:
    """Yield every semigroup of order n, deduplicated as requested.

    Args:
        n: Order, between 1 and the enumeration cap
        dedup: Raw tables, or one representative per isomorphism class
            (optionally identifying anti-isomorphic ones too)
        limits: Caps (default: get_limits())

    Raises:
        SizeCap: If n exceeds the enumeration cap
        InvalidTable: If n < 1

    Example:
        >>> sum(1 for _ in enumerate_semigroups(2))
        5
    """
    limits = limits or get_limits()
    if n > limits.max_enumeration_order:
        raise SizeCap("enumeration order", n, limits.max_enumeration_order)
    if n < 1:
        raise InvalidTable(f"enumeration order must be at least 1, got {n}")
    return (Semigroup.from_rows([flat[i * n:(i + 1) * n] for i in range(n)]) for flat in _tables(n, dedup))


def semigroups_up_to(order: int, dedup: Dedup = Dedup.UP_TO_ISO, limits: Optional[Limits] = None) -> List[Semigroup]:
    """All semigroups of order 1..order, smallest first."""
    return [s for n in range(1, order + 1) for s in enumerate_semigroups(n, dedup, limits)]
