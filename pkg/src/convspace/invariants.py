"""Radon and Helly numbers, Venn atoms, shatter functions, VC-dimensions.

Everything here is an exhaustive search over a finite space, kept
tractable by hereditary pruning: Helly-independent sets, shattered sets
and complete Venn diagrams are all closed under taking subsets, so the
searches grow candidates one element at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .errors import VerificationError
from .family import SetFamily
from .pointset import PointSet, bits, canonical_key, lowest, mask_of, submasks
from .space import ConvexitySpace, is_separable

HELLY_DIRECT_LIMIT = 12


def _mask(Y) -> int:
    if isinstance(Y, PointSet):
        return Y.mask
    if isinstance(Y, int):
        return Y
    return mask_of(Y)


def _partition_mask(space: ConvexitySpace, y: int) -> int | None:
    """Mask A of the first Radon partition of ``y`` (A holds the lowest point)."""
    first = y & -y
    rest = y ^ first
    for t in submasks(rest):
        a = first | t
        b = y ^ a
        if b and space.hull_mask(a) & space.hull_mask(b):
            return a
    return None


def radon_partition(space: ConvexitySpace, Y) -> tuple[PointSet, PointSet] | None:
    """First partition ``Y = A ∪ B`` with intersecting hulls, or None.

    The part containing the lowest index of ``Y`` is called A; its other
    members are enumerated by size and then lexicographically.
    """
    y = space.check_mask(_mask(Y))
    if not y:
        raise ValueError("radon_partition needs a non-empty set")
    a = _partition_mask(space, y)
    if a is None:
        return None
    return PointSet.from_mask(a), PointSet.from_mask(y ^ a)


def radon_failure(space: ConvexitySpace, n: int) -> PointSet | None:
    """First ``n``-subset (lexicographic) admitting no Radon partition."""
    for combo in combinations(range(space.n), n):
        y = mask_of(combo)
        if _partition_mask(space, y) is None:
            return PointSet.from_mask(y)
    return None


def radon_number(space: ConvexitySpace) -> int | None:
    """Smallest n such that every n-subset admits a Radon partition.

    Returns None when even the whole ground set has no partition.
    Relies on monotonicity in n, which :func:`radon_monotonicity_violation`
    checks on small spaces.
    """
    space.require_enumerable("Radon number")
    if _partition_mask(space, space.full) is None:
        return None
    for n in range(1, space.n + 1):
        if radon_failure(space, n) is None:
            return n
    return None


def radon_monotonicity_violation(space: ConvexitySpace) -> int | None:
    """Return n where every n-subset has a partition but some (n+1)-subset has none."""
    space.require_enumerable("Radon monotonicity")
    prev_all = False
    for n in range(1, space.n + 1):
        now_all = radon_failure(space, n) is None
        if prev_all and not now_all:
            return n - 1
        prev_all = now_all
    return None


def _is_independent(space: ConvexitySpace, s: int) -> bool:
    meet = space.full
    for x in bits(s):
        meet &= space.hull_mask(s ^ (1 << x))
        if not meet:
            return True
    return False


def helly_independent_sets(space: ConvexitySpace) -> list[int]:
    """Largest sets S with ``∩_x hull(S - x) = ∅``, canonical order.

    Independence is hereditary (a point common to the hulls of a
    subset's leave-one-outs would be common to the set's), so levels are
    built apriori-style from the previous one.
    """
    space.require_enumerable("Helly number")
    level = [1 << i for i in range(space.n)]
    while True:
        have = set(level)
        nxt = set()
        for s in level:
            top = s.bit_length()
            for x in range(top, space.n):
                t = s | (1 << x)
                if all(t ^ (1 << y) in have for y in bits(s)) and _is_independent(space, t):
                    nxt.add(t)
        if not nxt:
            return sorted(level, key=canonical_key)
        level = list(nxt)


def helly_number_independence(space: ConvexitySpace) -> int:
    """Size of the largest Helly-independent set (at least 1)."""
    return helly_independent_sets(space)[0].bit_count()


def helly_witness(space: ConvexitySpace) -> PointSet:
    return PointSet.from_mask(helly_independent_sets(space)[0])


def helly_direct_search(space: ConvexitySpace) -> tuple[int, list[PointSet]]:
    """Largest inclusion-minimal convex family with empty intersection.

    Depth-first over families of convex sets. A partial family is kept
    only while it is intersecting and irredundant (every member still
    misses some point common to the others). Both conditions only get
    harder as members are added, so each node passes its children the
    candidates still compatible with it (forward checking). In a minimal
    family the running intersection strictly shrinks with each member,
    which gives the second bound on how many members can still follow.
    """
    space.require_enumerable("direct Helly search")
    convex = space.convex_masks()
    best = 1 if 0 in convex else 0
    best_family = [0] if best else []
    cands = [c for c in convex if c and c != space.full]
    # large sets first: families of point complements are found early
    cands.sort(key=lambda c: (-c.bit_count(), canonical_key(c)))
    limit = space.n

    def compatible(c, inter, members, leave_outs):
        if not inter & ~c:
            return False
        for m, lo in zip(members, leave_outs):
            if not lo & c & ~m:
                return False
        return True

    def extend(pool, inter, members, leave_outs):
        nonlocal best, best_family
        depth = len(members) + 1
        for t, c in enumerate(pool):
            if best == limit or depth - 1 + len(pool) - t <= best:
                return
            new_inter = inter & c
            if not new_inter:
                if depth > best:
                    best, best_family = depth, members + [c]
                continue
            if depth + new_inter.bit_count() <= best:
                continue
            kids_members = members + [c]
            kids_lo = [lo & c for lo in leave_outs] + [inter]
            rest = [c2 for c2 in pool[t + 1:] if compatible(c2, new_inter, kids_members, kids_lo)]
            if depth + len(rest) > best:
                extend(rest, new_inter, kids_members, kids_lo)

    extend(cands, space.full, [], [])
    return best, [PointSet.from_mask(m) for m in best_family]


def helly_number_direct(space: ConvexitySpace) -> int:
    return helly_direct_search(space)[0]


def venn_atoms(family: SetFamily) -> list[tuple[tuple[int, ...], PointSet]]:
    """Nonempty Venn regions as (membership signature, points), by lowest point."""
    groups: dict[tuple[int, ...], int] = {}
    masks = family.masks
    for x in range(family.ground_size):
        sig = tuple(m >> x & 1 for m in masks)
        groups[sig] = groups.get(sig, 0) | (1 << x)
    return sorted(((s, PointSet.from_mask(a)) for s, a in groups.items()),
                  key=lambda item: lowest(item[1].mask))


def _refine(blocks: list[int], s: int) -> list[int]:
    out = []
    for b in blocks:
        inside = b & s
        if inside:
            out.append(inside)
        if b ^ inside:
            out.append(b ^ inside)
    return out


def dual_shatter(family: SetFamily, m: int) -> int:
    """Maximum number of nonempty Venn regions over m-subsets of the family."""
    if not 0 <= m <= len(family):
        raise ValueError(f"m={m} out of range 0..{len(family)}")
    if family.ground_size == 0:
        return 0
    masks = family.masks
    ceiling = min(1 << m, family.ground_size)
    best = 0

    def dfs(start, blocks, left):
        nonlocal best
        if left == 0:
            best = max(best, len(blocks))
            return
        for i in range(start, len(masks) - left + 1):
            if best == ceiling:
                return
            dfs(i + 1, _refine(blocks, masks[i]), left - 1)

    dfs(0, [family.full], m)
    return best


def complete_venn(family: SetFamily) -> list[int]:
    """Indices of a largest subfamily with a complete Venn diagram."""
    masks = family.masks
    best: list[int] = []

    def dfs(start, blocks, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if (2 * len(blocks)) > family.ground_size:
            return
        for i in range(start, len(masks)):
            s = masks[i]
            if all(b & s and b & ~s for b in blocks):
                chosen.append(i)
                dfs(i + 1, _refine(blocks, s), chosen)
                chosen.pop()

    if family.ground_size:
        dfs(0, [family.full], [])
    return best


def dual_vc_dimension(family: SetFamily) -> int:
    """Largest k with ``dual_shatter(family, k) == 2**k``."""
    return len(complete_venn(family))


def shattered_set(family: SetFamily) -> PointSet:
    """A largest point set on which the family realizes every trace."""
    masks = list(set(family.masks))
    best = 0

    def dfs(start, chosen, k):
        nonlocal best
        if k > best.bit_count():
            best = chosen
        if 1 << (k + 1) > len(masks):
            return
        for x in range(start, family.ground_size):
            t = chosen | (1 << x)
            if len({m & t for m in masks}) == 1 << (k + 1):
                dfs(x + 1, t, k + 1)

    dfs(0, 0, 0)
    return PointSet.from_mask(best)


def vc_dimension(family: SetFamily) -> int:
    return len(shattered_set(family))


def halfspace_family(space: ConvexitySpace) -> SetFamily:
    return SetFamily(space.n, [PointSet.from_mask(g) for g in space.halfspace_masks()])


def onn_ceiling(d: int) -> int:
    return d * (2**d - 1) + 3


def box_radon_formula(d: int) -> int:
    """Smallest r with C(r, floor(r/2)) > 2d."""
    from math import comb
    r = 1
    while comb(r, r // 2) <= 2 * d:
        r += 1
    return r


@dataclass
class BoundCheck:
    name: str
    holds: bool | None  # None: not applicable at this scale
    data: dict[str, Any] = field(default_factory=dict)


@dataclass
class InvariantReport:
    radon: int | None
    helly_independence: int
    helly_direct: int | None
    vc_halfspaces: int
    dual_vc_halfspaces: int
    separable: bool
    bound_checks: list[BoundCheck] = field(default_factory=list)
    separability_witness: Any = None

    def bound(self, name: str) -> BoundCheck:
        return next(b for b in self.bound_checks if b.name == name)

    @property
    def violations(self) -> list[BoundCheck]:
        return [b for b in self.bound_checks if b.holds is False]


def check_bounds(space: ConvexitySpace, *, radon=..., helly=None, vc=None, dual_vc=None,
                 separable=None) -> list[BoundCheck]:
    """Evaluate Levi, the VC/dual-VC inequality, Moran–Yehudayoff and (lattice) Onn.

    Precomputed invariants may be passed in to avoid recomputation.
    """
    if radon is ...:
        radon = radon_number(space)
    if helly is None:
        helly = helly_number_independence(space)
    if vc is None or dual_vc is None:
        hs = halfspace_family(space)
        vc = vc_dimension(hs) if vc is None else vc
        dual_vc = dual_vc_dimension(hs) if dual_vc is None else dual_vc
    if separable is None:
        separable = is_separable(space)[0]
    checks = []
    base = {"radon": radon, "helly": helly}
    checks.append(BoundCheck("levi", None if radon is None else helly < radon, base))
    checks.append(BoundCheck("eq1", dual_vc < 2 ** (vc + 1), {"vc": vc, "dual_vc": dual_vc}))
    my = None if radon is None or not separable else vc <= radon - 1
    checks.append(BoundCheck("moran_yehudayoff", my,
                             {"vc": vc, "radon": radon, "separable": separable}))
    if space.kind == "lattice":
        d = space.params["dim"]
        ceiling = onn_ceiling(d)
        # no n <= |X| works: the smallest n with the property is |X| + 1, vacuously
        effective = space.n + 1 if radon is None else radon
        checks.append(BoundCheck("onn", effective <= ceiling,
                                 {"radon": radon, "effective_radon": effective, "ceiling": ceiling}))
    return checks


def invariant_report(space: ConvexitySpace, direct: bool | None = None) -> InvariantReport:
    """Compute every invariant; cross-check the two Helly methods when ``direct``.

    ``direct`` defaults to True for spaces with at most 12 points.
    Divergence between the Helly methods raises :class:`VerificationError`.
    """
    if direct is None:
        direct = space.n <= HELLY_DIRECT_LIMIT
    radon = radon_number(space)
    helly = helly_number_independence(space)
    helly_d = helly_number_direct(space) if direct else None
    if helly_d is not None and helly_d != helly:
        raise VerificationError(
            f"Helly methods disagree: independence={helly}, direct={helly_d}", space)
    hs = halfspace_family(space)
    vc = vc_dimension(hs)
    dvc = dual_vc_dimension(hs)
    sep, witness = is_separable(space)
    checks = check_bounds(space, radon=radon, helly=helly, vc=vc, dual_vc=dvc, separable=sep)
    return InvariantReport(radon, helly, helly_d, vc, dvc, sep, checks, witness)
