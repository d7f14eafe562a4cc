"""Concrete convexity spaces: box and lattice grids, explicit families."""
from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import CapExceededError
from .family import SetFamily
from .geometry import in_planar_hull, planar_hull, point_in_rational_hull
from .pointset import PointSet, bits, mask_of
from .space import DEFAULT_CAP, ConvexitySpace, GroundPoint

GROUND_CAP = 4096


def _grid(d: int, side: int) -> np.ndarray:
    if d < 1 or side < 2:
        raise ValueError("need d >= 1 and side >= 2")
    if side**d > GROUND_CAP:
        raise CapExceededError(f"grid {side}^{d} exceeds the ground cap {GROUND_CAP}")
    # row-major: the first coordinate varies slowest
    return np.array(list(np.ndindex(*([side] * d))), dtype=np.int64).reshape(-1, d)


def _ground(coords: np.ndarray) -> list[GroundPoint]:
    return [
        GroundPoint(i, tuple(Fraction(int(v)) for v in row))
        for i, row in enumerate(coords)
    ]


def _layers(coords: np.ndarray, side: int) -> list[list[int]]:
    """layers[a][v] is the mask of grid points whose a-th coordinate is v."""
    d = coords.shape[1]
    return [
        [mask_of(np.flatnonzero(coords[:, a] == v).tolist()) for v in range(side)]
        for a in range(d)
    ]


def _box_oracles(coords: np.ndarray, side: int):
    d = coords.shape[1]
    layers = _layers(coords, side)
    # slab[a][lo][hi]: points with lo <= coord_a <= hi
    slab = []
    for a in range(d):
        rows = [[0] * side for _ in range(side)]
        for lo in range(side):
            acc = 0
            for hi in range(lo, side):
                acc |= layers[a][hi]
                rows[lo][hi] = acc
        slab.append(rows)
    full = (1 << len(coords)) - 1

    def hull_fn(mask: int) -> int:
        if not mask:
            return 0
        sub = coords[list(bits(mask))]
        lo = sub.min(axis=0)
        hi = sub.max(axis=0)
        out = full
        for a in range(d):
            out &= slab[a][lo[a]][hi[a]]
        return out

    def halfspace_fn() -> list[int]:
        hs = [0, full]
        for a in range(d):
            for t in range(side - 1):
                below = slab[a][0][t]
                hs += [below, full ^ below]
        return hs

    return hull_fn, halfspace_fn


def make_box_space(d: int, side: int, cap: int = DEFAULT_CAP) -> ConvexitySpace:
    """Axis-parallel boxes on the grid ``{0..side-1}^d``."""
    coords = _grid(d, side)
    hull_fn, halfspace_fn = _box_oracles(coords, side)
    return ConvexitySpace(
        _ground(coords), hull_fn, kind="box", params={"dim": d, "side": side},
        halfspace_fn=halfspace_fn, cap=cap,
    )


def make_lattice_space(d: int, side: int, cap: int = DEFAULT_CAP) -> ConvexitySpace:
    """Convex lattice sets traced on the grid ``{0..side-1}^d``.

    ``hull(Y)`` is the set of grid points lying in the real convex hull
    of ``Y``. Dimension 1 uses intervals, dimension 2 an exact integer
    polygon test, higher dimensions the exact rational LP.
    """
    coords = _grid(d, side)
    pts = [tuple(int(v) for v in row) for row in coords]
    if d == 1:
        hull_fn, _ = _box_oracles(coords, side)
        return ConvexitySpace(
            _ground(coords), hull_fn, kind="lattice", params={"dim": 1, "side": side}, cap=cap,
        )

    def hull_fn(mask: int) -> int:
        if not mask:
            return 0
        idx = list(bits(mask))
        sub = coords[idx]
        lo = sub.min(axis=0)
        hi = sub.max(axis=0)
        inbox = np.flatnonzero(np.all((coords >= lo) & (coords <= hi), axis=1))
        out = mask
        if d == 2:
            poly = planar_hull([pts[i] for i in idx])
            for i in inbox:
                if not mask >> int(i) & 1 and in_planar_hull(pts[i], poly):
                    out |= 1 << int(i)
        else:
            ys = [pts[i] for i in idx]
            for i in inbox:
                if not mask >> int(i) & 1 and point_in_rational_hull(pts[i], ys):
                    out |= 1 << int(i)
        return out

    return ConvexitySpace(
        _ground(coords), hull_fn, kind="lattice", params={"dim": d, "side": side}, cap=cap,
    )


def intersection_closure(masks: Iterable[int], full: int) -> list[int]:
    """Smallest intersection-closed family containing ``masks``, ∅ and X."""
    closed = {0, full}
    frontier = [m for m in set(masks) if m not in closed]
    closed.update(frontier)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    return list(closed)


def make_explicit_space(
    family: SetFamily, close: bool = True, labels: list[str] | None = None,
    cap: int = DEFAULT_CAP,
) -> ConvexitySpace:
    """Space whose convex sets are ``family`` closed under intersection.

    With ``close=False`` the family is taken as given, which lets
    :func:`check_axioms` report a malformed input instead of silently
    repairing it; hulls are then intersections of the declared members
    (X when no member contains the argument).
    """
    n = family.ground_size
    full = (1 << n) - 1
    fam = intersection_closure(family.masks, full) if close else list(dict.fromkeys(family.masks))
    # superset-first scan order is irrelevant for correctness, keep it stable
    members = sorted(fam)

    def hull_fn(mask: int) -> int:
        out = full
        for c in members:
            if c & mask == mask:
                out &= c
        return out

    labels = labels or [None] * n
    ground = [GroundPoint(i, None, labels[i]) for i in range(n)]
    return ConvexitySpace(ground, hull_fn, kind="explicit", params={"closed": close},
                          family=fam, cap=cap)


def box_lower_bound_family(d: int, n: int) -> SetFamily:
    """``n`` one-layer slabs in ``d`` groups of ``n/d``, group i orthogonal to axis i.

    The ground is the grid of :func:`make_box_space` with ``side = n // d``.
    """
    if d < 1 or n < 2 * d or n % d:
        raise ValueError(f"n={n} must be a multiple of d={d} with n/d >= 2")
    side = n // d
    coords = _grid(d, side)
    layers = _layers(coords, side)
    sets = [PointSet.from_mask(layers[a][v]) for a in range(d) for v in range(side)]
    return SetFamily(len(coords), sets)


def lower_bound_space(d: int, n: int, cap: int = DEFAULT_CAP) -> ConvexitySpace:
    """The box space on which :func:`box_lower_bound_family` lives."""
    return make_box_space(d, n // d, cap)


def grid_index(space: ConvexitySpace, point: Iterable[int]) -> int:
    """Ground index of a grid point of a box or lattice space."""
    side = space.params["side"]
    idx = 0
    for v in point:
        if not 0 <= v < side:
            raise IndexError(f"coordinate {v} outside 0..{side - 1}")
        idx = idx * side + v
    return idx


def grid_set(space: ConvexitySpace, points: Iterable[Iterable[int]]) -> PointSet:
    return PointSet(grid_index(space, p) for p in points)


def all_builtin_spaces(max_points: int, dims: Iterable[int] = (1, 2, 3, 4)) -> list[ConvexitySpace]:
    """Every box and lattice grid with at most ``max_points`` points."""
    out = []
    for d in dims:
        side = 2
        while side**d <= max_points:
            out.append(make_box_space(d, side))
            out.append(make_lattice_space(d, side))
            side += 1
    return out
