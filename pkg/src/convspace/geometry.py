"""Exact convex-hull membership over the rationals.

No floating point is used anywhere in here: coordinates are converted to
:class:`fractions.Fraction` (or kept as ints in the planar fast path) and
every decision is an exact sign test.
"""
from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

Vector = Sequence[Fraction | int]


def _feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Decide whether ``rows @ lam == rhs`` has a solution with ``lam >= 0``.

    Phase one of the simplex method with one artificial variable per
    row and Bland's rule, so it terminates and stays exact.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    # tableau columns: n structural, m artificial, then rhs
    tab = []
    for i in range(m):
        row = list(rows[i])
        b = rhs[i]
        if b < 0:
            row = [-v for v in row]
            b = -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [b])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, written as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= tab[i][j]
    for i in range(m):
        cost[n + i] += 1

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur in phase one; guard anyway
            break
        piv = tab[leave][enter]
        prow = [v / piv for v in tab[leave]]
        tab[leave] = prow
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, prow)]
        basis[leave] = enter
    return -cost[width] == 0


def point_in_rational_hull(p: Vector, points: Sequence[Vector]) -> bool:
    """True iff ``p`` is a convex combination of ``points``.

    Raises ``ValueError`` when dimensions disagree. The empty point list
    has an empty hull.
    """
    d = len(p)
    for q in points:
        if len(q) != d:
            raise ValueError(f"dimension mismatch: {len(q)} != {d}")
    if not points:
        return False
    # ints and Fractions compare exactly; convert only for the LP
    target = list(p)
    pts = [list(q) for q in points]
    # Face reduction: if p sits on the bounding box boundary in some
    # coordinate, any convex combination can only use points on that face.
    while True:
        if not pts:
            return False
        if any(q == target for q in pts):
            return True
        keep = pts
        for k in range(d):
            lo = min(q[k] for q in keep)
            hi = max(q[k] for q in keep)
            if not lo <= target[k] <= hi:
                return False
            if target[k] == lo or target[k] == hi:
                keep = [q for q in keep if q[k] == target[k]]
        if len(keep) == len(pts):
            break
        pts = keep
    rows = [[Fraction(q[k]) for q in pts] for k in range(d)]
    rows.append([Fraction(1)] * len(pts))
    return _feasible(rows, [Fraction(v) for v in target] + [Fraction(1)])


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def planar_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Counter-clockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for q in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper: list = []
    for q in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def in_planar_hull(q: tuple[int, int], hull: list[tuple[int, int]]) -> bool:
    """Closed membership test against the output of :func:`planar_hull`."""
    if not hull:
        return False
    if len(hull) == 1:
        return q == hull[0]
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, q) != 0:
            return False
        return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])
    n = len(hull)
    return all(_cross(hull[i], hull[(i + 1) % n], q) >= 0 for i in range(n))
