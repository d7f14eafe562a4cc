"""Fractional-Helly measurements on concrete families.

``alpha`` and ``beta`` are exact fractions; only :func:`optimal_beta`
produces an irrational value and therefore carries a precision knob.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from .family import SetFamily


def colex_tuples(family: SetFamily, k: int, *, intersecting_only: bool = False) -> Iterator[tuple[int, ...]]:
    """k-subsets of member indices in colexicographic order.

    With ``intersecting_only`` the running intersection prunes whole
    branches as soon as it becomes empty.
    """
    masks = family.masks
    full = family.full

    def rec(top: int, need: int, inter: int, suffix: tuple[int, ...]):
        if need == 0:
            yield suffix
            return
        for last in range(need - 1, top):
            nxt = inter & masks[last]
            if intersecting_only and not nxt:
                continue
            yield from rec(last, need - 1, nxt, (last,) + suffix)

    yield from rec(len(masks), k, full, ())


def count_intersecting_tuples(family: SetFamily, k: int) -> int:
    """Number of k-subsets of the family with a common point."""
    if not 1 <= k <= len(family):
        raise ValueError(f"k={k} out of range 1..{len(family)}")
    return sum(1 for _ in colex_tuples(family, k, intersecting_only=True))


def max_intersecting_subfamily(family: SetFamily) -> tuple[int, int | None, list[int]]:
    """Largest intersecting subfamily as (size, witness point, member indices).

    Members are point sets, so a subfamily intersects iff one ground
    point lies in all of them; the witness is the lowest such point.
    """
    if not len(family):
        raise ValueError("family must be non-empty")
    masks = family.masks
    best, point = 0, None
    for x in range(family.ground_size):
        c = sum(m >> x & 1 for m in masks)
        if c > best:
            best, point = c, x
    members = [] if point is None else [i for i, m in enumerate(masks) if m >> point & 1]
    return best, point, members


def optimal_beta(alpha, d: int, digits: int = 12) -> Decimal:
    """``1 - (1 - alpha)^(1/(d+1))`` to ``digits`` significant digits."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    if d < 0:
        raise ValueError("d must be non-negative")
    with localcontext() as ctx:
        ctx.prec = digits + 10
        rest = Decimal(alpha.denominator - alpha.numerator) / Decimal(alpha.denominator)
        root = rest ** (Decimal(1) / Decimal(d + 1))
        value = Decimal(1) - root
        ctx.prec = digits
        return +value


@dataclass
class FHReport:
    n: int
    k: int
    intersecting_k_tuples: int
    alpha: Fraction
    max_intersecting: int
    beta: Fraction
    witness_point: int | None
    members: list[int] = field(default_factory=list)

    def check(self, family: SetFamily) -> None:
        """Raise AssertionError if the record is internally inconsistent."""
        assert 0 <= self.alpha <= 1 and 0 <= self.beta <= 1
        assert self.alpha == Fraction(self.intersecting_k_tuples, comb(self.n, self.k))
        assert self.beta == Fraction(self.max_intersecting, self.n)
        if self.witness_point is not None:
            hits = sum(1 for s in family if self.witness_point in s)
            assert hits == self.max_intersecting


def fh_report(family: SetFamily, k: int) -> FHReport:
    n = len(family)
    count = count_intersecting_tuples(family, k)
    size, point, members = max_intersecting_subfamily(family)
    return FHReport(n, k, count, Fraction(count, comb(n, k)), size, Fraction(size, n), point, members)
