"""Finite set families over a ground set ``0..ground_size-1``."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .pointset import PointSet


@dataclass(frozen=True)
class SetFamily:
    ground_size: int
    sets: tuple[PointSet, ...]

    def __init__(self, ground_size: int, sets: Iterable = ()):
        if ground_size < 0:
            raise ValueError("ground_size must be non-negative")
        ps = tuple(s if isinstance(s, PointSet) else PointSet(s) for s in sets)
        for k, s in enumerate(ps):
            if s and s.max_index() >= ground_size:
                raise ValueError(f"set {k} has index {s.max_index()} >= ground_size {ground_size}")
        object.__setattr__(self, "ground_size", ground_size)
        object.__setattr__(self, "sets", ps)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    @property
    def masks(self) -> list[int]:
        return [s.mask for s in self.sets]

    @property
    def full(self) -> int:
        return (1 << self.ground_size) - 1

    def to_lists(self) -> list[list[int]]:
        return [s.to_list() for s in self.sets]
