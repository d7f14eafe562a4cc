"""Finite convexity spaces: hulls, convex families, axioms, halfspaces, separation."""
from __future__ import annotations

import random
from collections import deque
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import CapExceededError, HypothesisViolation
from .pointset import PointSet, bits, canonical_key, mask_of

DEFAULT_CAP = 24
# below this size the hull laws are checked on every subset
_EXHAUSTIVE_LAW_LIMIT = 12
_LAW_SAMPLE = 4096


@dataclass(frozen=True)
class GroundPoint:
    index: int
    coords: tuple[Fraction, ...] | None = None
    label: str | None = None


@dataclass(frozen=True)
class Halfspace:
    gamma: PointSet
    complement: PointSet

    def __iter__(self):
        return iter((self.gamma, self.complement))


class ConvexitySpace:
    """A finite ground set together with a deterministic hull oracle.

    ``hull_fn`` maps a bitmask to a bitmask. Results are memoised per
    space, so the oracle is called at most once per distinct argument.
    ``family`` is an optional declared list of convex masks (explicit
    spaces); ``halfspace_fn`` optionally lists halfspace masks directly,
    which keeps :func:`separate` usable above the enumeration cap.
    """

    def __init__(
        self,
        ground: Sequence[GroundPoint],
        hull_fn: Callable[[int], int],
        *,
        kind: str = "custom",
        params: dict[str, Any] | None = None,
        family: Iterable[int] | None = None,
        halfspace_fn: Callable[[], list[int]] | None = None,
        cap: int = DEFAULT_CAP,
    ):
        ground = list(ground)
        if not ground:
            raise ValueError("a convexity space needs a non-empty ground set")
        for i, g in enumerate(ground):
            if g.index != i:
                raise ValueError(f"ground indices must be 0..n-1, got {g.index} at position {i}")
        dims = {len(g.coords) for g in ground if g.coords is not None}
        if dims and (len(dims) > 1 or any(g.coords is None for g in ground)):
            raise ValueError("either every ground point has coordinates of one dimension or none do")
        if cap <= 0:
            raise ValueError("cap must be positive")
        self.ground = tuple(ground)
        self.n = len(ground)
        self.full = (1 << self.n) - 1
        self.kind = kind
        self.params = dict(params or {})
        self.cap = cap
        self.family = None if family is None else tuple(sorted(set(family), key=canonical_key))
        self._hull_fn = hull_fn
        self._halfspace_fn = halfspace_fn
        self._hull_cache: dict[int, int] = {}
        self.convex_family_cache: list[int] | None = None
        self._halfspace_cache: list[int] | None = None

    def __repr__(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"ConvexitySpace({self.kind}, n={self.n}{', ' + extra if extra else ''})"

    def check_mask(self, mask: int) -> int:
        if mask < 0 or mask >> self.n:
            bad = max(bits(mask)) if mask > 0 else mask
            raise IndexError(f"point index {bad} out of range for a space with {self.n} points")
        return mask

    def hull_mask(self, mask: int) -> int:
        h = self._hull_cache.get(mask)
        if h is None:
            h = self._hull_fn(mask)
            self._hull_cache[mask] = h
        return h

    def is_convex_mask(self, mask: int) -> bool:
        return self.hull_mask(mask) == mask

    def require_enumerable(self, what: str) -> None:
        if self.n > self.cap:
            raise CapExceededError(f"{what} needs |X| <= {self.cap}, this space has {self.n} points")

    def convex_masks(self) -> list[int]:
        if self.convex_family_cache is None:
            enumerate_convex_sets(self)
        return self.convex_family_cache

    def halfspace_masks(self) -> list[int]:
        if self._halfspace_cache is None:
            if self.n <= self.cap:
                convex = set(self.convex_masks())
                hs = [g for g in convex if self.full ^ g in convex]
            elif self._halfspace_fn is not None:
                hs = list(set(self._halfspace_fn()))
            else:
                raise CapExceededError(
                    f"halfspace enumeration needs |X| <= {self.cap} or a direct oracle"
                )
            hs.sort(key=canonical_key)
            self._halfspace_cache = hs
        return self._halfspace_cache

    def coords(self, i: int) -> tuple[Fraction, ...] | None:
        return self.ground[i].coords


def _as_mask(space: ConvexitySpace, Y) -> int:
    if isinstance(Y, PointSet):
        m = Y.mask
    elif isinstance(Y, int):
        m = Y
    else:
        m = mask_of(Y)
    return space.check_mask(m)


def hull(space: ConvexitySpace, Y) -> PointSet:
    """Convex hull of ``Y`` (a PointSet or iterable of indices)."""
    return PointSet.from_mask(space.hull_mask(_as_mask(space, Y)))


def is_convex(space: ConvexitySpace, S) -> bool:
    m = _as_mask(space, S)
    return space.hull_mask(m) == m


def enumerate_convex_sets(space: ConvexitySpace) -> list[PointSet]:
    """Every hull-closed subset, in canonical order.

    Closed sets are generated by breadth-first closure from ``hull(∅)``:
    each closed set is reachable by adding its points one at a time, so
    ``#closed * n`` hull calls suffice instead of a scan of all subsets.
    """
    space.require_enumerable("convex-family enumeration")
    if space.convex_family_cache is None:
        start = space.hull_mask(0)
        seen = {start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            rest = space.full & ~c
            for x in bits(rest):
                h = space.hull_mask(c | (1 << x))
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        space.convex_family_cache = sorted(seen, key=canonical_key)
    return [PointSet.from_mask(m) for m in space.convex_family_cache]


def enumerate_halfspaces(space: ConvexitySpace) -> list[Halfspace]:
    """All convex sets whose complement is convex, ∅ and X included."""
    return [
        Halfspace(PointSet.from_mask(g), PointSet.from_mask(space.full ^ g))
        for g in space.halfspace_masks()
    ]


def separate(space: ConvexitySpace, S, x: int) -> Halfspace | None:
    """Canonically smallest halfspace containing ``S`` and missing ``x``."""
    s = _as_mask(space, S)
    if not 0 <= x < space.n:
        raise IndexError(f"point index {x} out of range")
    if space.hull_mask(s) != s:
        raise HypothesisViolation("separate() needs a convex set", PointSet.from_mask(s))
    if s >> x & 1:
        raise HypothesisViolation(f"point {x} lies in the set to be separated", x)
    bit = 1 << x
    for g in space.halfspace_masks():
        if g & s == s and not g & bit:
            return Halfspace(PointSet.from_mask(g), PointSet.from_mask(space.full ^ g))
    return None


def is_separable(space: ConvexitySpace) -> tuple[bool, tuple[PointSet, int] | None]:
    """Check separability; on failure return the first (S, x) in canonical order.

    For a fixed convex S, every outside x is separable iff the
    intersection of the halfspaces containing S is S itself.
    """
    halfspaces = space.halfspace_masks()
    for s in space.convex_masks():
        meet = space.full
        for g in halfspaces:
            if g & s == s:
                meet &= g
                if meet == s:
                    break
        if meet != s:
            x = next(bits(meet & ~s))
            return False, (PointSet.from_mask(s), x)
    return True, None


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: Any = None


@dataclass
class AxiomReport:
    checks: list[AxiomCheck] = field(default_factory=list)
    c3: str = "vacuous (finite)"

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]


def _law_sample(space: ConvexitySpace, seed: int) -> list[int]:
    if space.n <= _EXHAUSTIVE_LAW_LIMIT:
        return list(range(space.full + 1))
    rng = random.Random(seed)
    return [0, space.full] + [rng.getrandbits(space.n) for _ in range(_LAW_SAMPLE)]


def check_axioms(space: ConvexitySpace, seed: int = 0) -> AxiomReport:
    """Check C1, C2 and the hull-operator laws; C3 is vacuous for finite X.

    The family checked is the declared one when the space was built from
    an explicit list of sets, otherwise the enumerated hull-closed sets.
    Hull laws run on every subset for small spaces and on a seeded
    sample above that.
    """
    space.require_enumerable("axiom checking")
    fam = list(space.family) if space.family is not None else space.convex_masks()
    famset = set(fam)
    report = AxiomReport()

    missing = [PointSet.from_mask(m) for m in (0, space.full) if m not in famset]
    if not missing and space.hull_mask(0) != 0:
        missing = [PointSet.from_mask(space.hull_mask(0))]
    report.checks.append(AxiomCheck("C1", not missing, missing[0] if missing else None))

    c2_witness = None
    for i, a in enumerate(fam):
        for b in fam[i + 1:]:
            if a & b not in famset:
                c2_witness = (PointSet.from_mask(a), PointSet.from_mask(b))
                break
        if c2_witness:
            break
    report.checks.append(AxiomCheck("C2", c2_witness is None, c2_witness))

    sample = _law_sample(space, seed)
    ext = idem = mono = agree = None
    for y in sample:
        h = space.hull_mask(y)
        if ext is None and h & y != y:
            ext = PointSet.from_mask(y)
        if idem is None and space.hull_mask(h) != h:
            idem = PointSet.from_mask(y)
        if mono is None:
            for x in bits(space.full & ~y):
                if h & ~space.hull_mask(y | (1 << x)):
                    mono = (PointSet.from_mask(y), PointSet.from_mask(y | (1 << x)))
                    break
        if agree is None:
            meet = space.full
            for c in fam:
                if c & y == y:
                    meet &= c
            if meet != h:
                agree = PointSet.from_mask(y)
    report.checks.append(AxiomCheck("hull_extensive", ext is None, ext))
    report.checks.append(AxiomCheck("hull_monotone", mono is None, mono))
    report.checks.append(AxiomCheck("hull_idempotent", idem is None, idem))
    report.checks.append(AxiomCheck("hull_matches_family", agree is None, agree))
    return report
