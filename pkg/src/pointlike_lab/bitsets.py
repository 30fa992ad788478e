"""Subsets of a semigroup's elements as integer bitmasks.

Bit ``i`` of a mask is set when element ``i`` belongs to the subset. Faces,
fibers, ideals and subsemigroups are all plain ``int`` masks.
"""

from typing import Iterable, Iterator, List, Sequence


def mask_of(elements: Iterable[int]) -> int:
    """Mask with exactly the given element bits set."""
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def full_mask(order: int) -> int:
    return (1 << order) - 1


def members(mask: int) -> Iterator[int]:
    """Yield the element indices of a mask in increasing order."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def member_list(mask: int) -> List[int]:
    return list(members(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """Yield every nonempty submask of ``mask`` (including ``mask`` itself)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def nonempty_subsets(order: int) -> range:
    """All nonempty subsets of {0..order-1}, i.e. the elements of P(S)."""
    return range(1, 1 << order)


def singletons(order: int) -> List[int]:
    return [1 << i for i in range(order)]


def image(mask: int, mapping: Sequence[int]) -> int:
    """Image of a subset under an element map."""
    result = 0
    for x in members(mask):
        result |= 1 << mapping[x]
    return result


def face_key(mask: int):
    """Canonical face order: by size, then by mask value."""
    return (popcount(mask), mask)
