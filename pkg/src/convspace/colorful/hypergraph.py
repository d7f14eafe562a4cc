"""Complete k-partite k-uniform hypergraphs and partite subhypergraph search."""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

Edge = tuple[int, ...]


@dataclass(frozen=True)
class CompletePartiteHypergraph:
    """Vertex classes ``V_1..V_k``; the edges are all transversals.

    Vertices are plain ints and must be distinct across classes. Edges
    are tuples listing one vertex per class, in class order.
    """

    classes: tuple[tuple[int, ...], ...]

    def __init__(self, classes: Iterable[Iterable[int]]):
        cl = tuple(tuple(c) for c in classes)
        seen: set[int] = set()
        for c in cl:
            if len(set(c)) != len(c) or seen & set(c):
                raise ValueError("vertex classes must be disjoint lists of distinct vertices")
            seen.update(c)
        object.__setattr__(self, "classes", cl)

    @classmethod
    def complete(cls, k: int, t: int) -> CompletePartiteHypergraph:
        """K^k(t) with class i holding vertices ``i*t .. i*t+t-1``."""
        if k < 1 or t < 1:
            raise ValueError("need k >= 1 and t >= 1")
        return cls([range(i * t, (i + 1) * t) for i in range(k)])

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def num_edges(self) -> int:
        out = 1
        for c in self.classes:
            out *= len(c)
        return out

    def edges(self) -> Iterator[Edge]:
        return product(*self.classes)

    def class_of(self, v: int) -> int:
        for i, c in enumerate(self.classes):
            if v in c:
                return i
        raise KeyError(v)

    def edges_at(self, v: int) -> Iterator[Edge]:
        """The edges containing ``v``."""
        i = self.class_of(v)
        lists = [c if j != i else (v,) for j, c in enumerate(self.classes)]
        return product(*lists)


def _sizes(H: CompletePartiteHypergraph, s) -> tuple[int, ...]:
    sizes = (s,) * H.k if isinstance(s, int) else tuple(s)
    if len(sizes) != H.k:
        raise ValueError("one target size per class is required")
    for size, c in zip(sizes, H.classes):
        if size < 1:
            raise ValueError("class sizes must be positive")
        if size > len(c):
            raise ValueError(f"s={size} exceeds class size {len(c)}")
    return sizes


def _search(H: CompletePartiteHypergraph, kept: set[Edge], sizes: Sequence[int], count: bool):
    """Shared depth-first search over classes, in lexicographic order.

    A vertex is usable in class i only if every product of the classes
    chosen so far extended by it is a prefix of some kept edge, and this
    condition is per-vertex, so the usable vertices are filtered first
    and combinations are drawn from them.
    """
    k = H.k
    prefixes = [set() for _ in range(k + 1)]
    for e in kept:
        for j in range(k + 1):
            prefixes[j].add(e[:j])
    total = 0

    def rec(i: int, chosen: list[tuple[int, ...]], partial: list[Edge]):
        nonlocal total
        usable = [v for v in H.classes[i] if all(p + (v,) in prefixes[i + 1] for p in partial)]
        if len(usable) < sizes[i]:
            return None
        if i == k - 1:
            if count:
                total += comb(len(usable), sizes[i])
                return None
            return chosen + [tuple(usable[: sizes[i]])]
        for U in combinations(usable, sizes[i]):
            nxt = [p + (v,) for p in partial for v in U]
            found = rec(i + 1, chosen + [U], nxt)
            if found is not None:
                return found
        return None

    found = rec(0, [], [()])
    return total if count else found


def _check(H: CompletePartiteHypergraph, kept: Iterable[Edge]) -> set[Edge]:
    kept = set(kept)
    for e in kept:
        if len(e) != H.k or any(v not in c for v, c in zip(e, H.classes)):
            raise ValueError(f"{e} is not an edge of the hypergraph")
    return kept


def find_complete_partite(H: CompletePartiteHypergraph, kept_edges: Iterable[Edge], arity: int,
                          s) -> tuple[tuple[int, ...], ...] | None:
    """Lexicographically first classes ``U_i ⊆ V_i`` of size ``s`` spanning only kept edges.

    ``s`` is an int or one size per class. Returns None if no such copy
    exists.
    """
    if arity != H.k:
        raise ValueError(f"arity {arity} does not match the hypergraph's {H.k} classes")
    sizes = _sizes(H, s)
    found = _search(H, _check(H, kept_edges), sizes, count=False)
    return None if found is None else tuple(found)


def count_partite_copies(H: CompletePartiteHypergraph, kept_edges: Iterable[Edge], s) -> int:
    """Number of class-respecting copies of K^k(s) inside ``kept_edges``."""
    sizes = _sizes(H, s)
    return _search(H, _check(H, kept_edges), sizes, count=True)
