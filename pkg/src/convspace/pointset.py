"""Subsets of a finite ground set, stored as Python integers used as bitsets.

Python ints have no width limit, so a mask handles any ground size; the
hot loops elsewhere in the package work on raw masks and only wrap them
in :class:`PointSet` at API boundaries.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import combinations


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if i < 0:
            raise IndexError(f"negative point index {i}")
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    """Index of the lowest set bit; -1 for the empty mask."""
    return (mask & -mask).bit_length() - 1


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key for the canonical order: by size, then by sorted indices."""
    return mask.bit_count(), tuple(bits(mask))


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in canonical order."""
    idx = list(bits(mask))
    for k in range(len(idx) + 1):
        for combo in combinations(idx, k):
            yield mask_of(combo)


class PointSet:
    """An immutable set of ground indices.

    Equality and hashing go through the mask; ordering is the canonical
    one (size first, then lexicographic on the sorted members), which is
    the tie-break used whenever a procedure must pick "any" witness.
    """

    __slots__ = ("mask",)

    def __init__(self, members: Iterable[int] = ()):
        object.__setattr__(self, "mask", mask_of(members))

    @classmethod
    def from_mask(cls, mask: int) -> PointSet:
        if mask < 0:
            raise ValueError("mask must be non-negative")
        ps = cls.__new__(cls)
        object.__setattr__(ps, "mask", mask)
        return ps

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 0 and bool(self.mask >> i & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PointSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return self.mask == mask_of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: PointSet) -> bool:
        return canonical_key(self.mask) < canonical_key(other.mask)

    def __le__(self, other: PointSet) -> bool:
        return self == other or self < other

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet.from_mask(self.mask | other.mask)

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet.from_mask(self.mask & other.mask)

    def __sub__(self, other: PointSet) -> PointSet:
        return PointSet.from_mask(self.mask & ~other.mask)

    def issubset(self, other: PointSet) -> bool:
        return self.mask & ~other.mask == 0

    def issuperset(self, other: PointSet) -> bool:
        return other.mask & ~self.mask == 0

    def isdisjoint(self, other: PointSet) -> bool:
        return self.mask & other.mask == 0

    def max_index(self) -> int:
        return self.mask.bit_length() - 1

    def to_list(self) -> list[int]:
        return list(bits(self.mask))

    def __repr__(self) -> str:
        return f"PointSet({self.to_list()})"
