"""Separated pairs of point multisets and the partite refinement built on them."""
from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product

from ..errors import HypothesisViolation, SeparationError, VerificationError
from ..pointset import PointSet, bits, lowest
from ..space import ConvexitySpace, Halfspace, separate
from .hypergraph import CompletePartiteHypergraph, Edge, find_complete_partite


class RadonPremiseError(HypothesisViolation):
    """The heavy hulls have no common point, so the space's Radon number exceeds r."""


class LabeledFunction:
    """A map ``E -> X`` modelling a multiset of ground points.

    The domain is the key order of ``values``; multiplicities are
    preimage sizes.
    """

    def __init__(self, values: Mapping[Hashable, int] | Sequence[int]):
        if isinstance(values, Mapping):
            self.values = dict(values)
        else:
            self.values = dict(enumerate(values))
        if not self.values:
            raise ValueError("the domain E must be non-empty")

    @property
    def domain(self) -> tuple:
        return tuple(self.values)

    def __call__(self, e) -> int:
        return self.values[e]

    def __len__(self) -> int:
        return len(self.values)

    def image_mask(self, subdomain: Iterable | None = None) -> int:
        keys = self.values if subdomain is None else subdomain
        m = 0
        for e in keys:
            m |= 1 << self.values[e]
        return m

    def image(self) -> PointSet:
        return PointSet.from_mask(self.image_mask())

    def __repr__(self) -> str:
        return f"LabeledFunction({self.values!r})"


def weight(f: LabeledFunction, Z) -> int:
    """``|Z|_f``: how many elements of E land in Z."""
    z = Z.mask if isinstance(Z, PointSet) else (Z if isinstance(Z, int) else PointSet(Z).mask)
    return sum(1 for x in f.values.values() if z >> x & 1)


@dataclass
class SeparatedPairCertificate:
    E0: tuple
    i: int
    j: int
    gamma: Halfspace
    x0: int
    N: int
    r: int
    gamma_weights: list[int] = field(default_factory=list)
    complement_weights: list[int] = field(default_factory=list)


def _heavy_hull_meet(space: ConvexitySpace, point_weight: dict[int, int], N: int, r: int) -> int:
    """Intersection of hull(Z) over all Z ⊆ S with ``(r-1) w(Z) > (r-2) N``.

    Hulls are monotone, so only sets that become heavy when their last
    point is added are visited; every heavy set contains one of them.
    """
    pts = sorted(point_weight)
    suffix = [0] * (len(pts) + 1)
    for t in range(len(pts) - 1, -1, -1):
        suffix[t] = suffix[t + 1] + point_weight[pts[t]]
    meet = space.full

    def heavy(w):
        return (r - 1) * w > (r - 2) * N

    def rec(t, z, w):
        nonlocal meet
        if heavy(w):
            meet &= space.hull_mask(z)
            return
        if t == len(pts) or not heavy(w + suffix[t]) or not meet:
            return
        x = pts[t]
        rec(t + 1, z | (1 << x), w + point_weight[x])
        rec(t + 1, z, w)

    rec(0, 0, 0)
    return meet


def large_separated_pairs(space: ConvexitySpace, fs: Sequence[LabeledFunction], r: int) -> SeparatedPairCertificate:
    """Find ``E0``, a pair ``i, j`` and a halfspace separating ``f_i(E0)`` from ``f_j(E0)``.

    Runs the constructive argument: the common point ``x0`` of all hulls
    of heavy sub-multisets is found by direct intersection, the first
    ``f_i`` whose hull misses it is separated from it, and ``j`` is the
    function putting the most weight outside the halfspace (lowest index
    on ties).
    """
    m = len(fs)
    if m < 2:
        raise ValueError("need at least two functions")
    if r < 3:
        raise ValueError("r must be at least 3")
    domain = fs[0].domain
    if any(set(f.domain) != set(domain) for f in fs):
        raise ValueError("all functions must share the domain E")
    hulls = [space.hull_mask(space.check_mask(f.image_mask())) for f in fs]
    common = space.full
    for h in hulls:
        common &= h
    if common:
        raise HypothesisViolation("hulls intersect", PointSet.from_mask(common))

    N = m * len(domain)
    point_weight: dict[int, int] = {}
    for f in fs:
        for x in f.values.values():
            point_weight[x] = point_weight.get(x, 0) + 1
    meet = _heavy_hull_meet(space, point_weight, N, r)
    if not meet:
        raise RadonPremiseError(
            f"heavy hulls have no common point: Radon number of the space exceeds r={r}")
    x0 = lowest(meet)
    i = next(k for k, h in enumerate(hulls) if not h >> x0 & 1)
    gamma = separate(space, hulls[i], x0)
    if gamma is None:
        raise SeparationError(f"no halfspace separates hull(f_{i}(E)) from point {x0}",
                              (PointSet.from_mask(hulls[i]), x0))
    gw = [weight(f, gamma.gamma) for f in fs]
    cw = [len(domain) - g for g in gw]
    j = max((k for k in range(m) if k != i), key=lambda k: (cw[k], -k))
    E0 = tuple(e for e in domain if fs[j](e) in gamma.complement)
    cert = SeparatedPairCertificate(E0, i, j, gamma, x0, N, r, gw, cw)
    if (r - 1) * len(E0) < len(domain) or (r - 1) * sum(gw) > (r - 2) * N or cw[i]:
        raise VerificationError("separated-pair bounds fail", cert)
    return cert


def verify_separated_pair(space: ConvexitySpace, fs: Sequence[LabeledFunction], cert: SeparatedPairCertificate,
                          r: int) -> list[str]:
    """Re-check a certificate from scratch; returns the list of failed conditions."""
    problems = []
    g, gc = cert.gamma.gamma.mask, cert.gamma.complement.mask
    if g | gc != space.full or g & gc:
        problems.append("gamma and its complement do not partition X")
    if space.hull_mask(g) != g or space.hull_mask(gc) != gc:
        problems.append("gamma is not a halfspace")
    if (r - 1) * len(cert.E0) < len(fs[0]):
        problems.append("|E0| < |E|/(r-1)")
    if len(set(cert.E0)) != len(cert.E0) or not set(cert.E0) <= set(fs[0].domain):
        problems.append("E0 is not a subset of E")
    if fs[cert.i].image_mask(cert.E0) & ~g:
        problems.append("f_i(E0) not inside gamma")
    if fs[cert.j].image_mask(cert.E0) & ~gc:
        problems.append("f_j(E0) not inside the complement")
    if cert.i == cert.j:
        problems.append("i == j")
    return problems


def _images(f: LabeledFunction, H: CompletePartiteHypergraph, A: Iterable[int]) -> dict[int, int]:
    return {v: f.image_mask(H.edges_at(v)) for v in A}


def check_separable_subset(space: ConvexitySpace, f: LabeledFunction, subH: CompletePartiteHypergraph,
                           A: Sequence[int]) -> tuple[int, int, Halfspace] | None:
    """First ordered pair ``(u, v)`` of A and halfspace with ``f(E_u) ⊆ γ``, ``f(E_v) ⊆ γ̄``.

    Pairs are scanned lexicographically, halfspaces canonically.
    """
    A = list(A)
    cls = {subH.class_of(v) for v in A}
    if len(cls) > 1:
        raise ValueError("A must lie inside one vertex class")
    img = _images(f, subH, A)
    hs = space.halfspace_masks()
    for u in A:
        for v in A:
            if u == v:
                continue
            iu, iv = img[u], img[v]
            if iu & iv:
                continue
            for g in hs:
                if g & iu == iu and not g & iv:
                    return u, v, Halfspace(PointSet.from_mask(g), PointSet.from_mask(space.full ^ g))
    return None


@dataclass
class Case1:
    """m vertices of the last class whose image hulls share ``point``."""
    A: tuple[int, ...]
    point: int


@dataclass
class Case2:
    """Classes ``W_1..W_k`` on which every m-subset of ``W_k`` is separable."""
    classes: tuple[tuple[int, ...], ...]
    separations: list[tuple[tuple[int, ...], int, int, Halfspace]] = field(default_factory=list)


@dataclass
class Inconclusive:
    stage: str
    reason: str


def refine_for_any_f(space: ConvexitySpace, H: CompletePartiteHypergraph, f: LabeledFunction,
                     n: int, m: int, r: int, *, trim: bool = True) -> Case1 | Case2 | Inconclusive:
    """Either find m vertices of the last class with intersecting image hulls, or shrink the other classes.

    ``W_k`` is the first ``n`` vertices of the last class. Each m-subset
    A of it either has intersecting hulls of ``f(E_v)`` (Case1), is
    already separable in the current subhypergraph, or is made separable
    by running :func:`large_separated_pairs` over the (k-1)-partite edge
    set and keeping the largest complete partite piece of ``E0`` whose
    classes still have at least ``n`` vertices. When that piece does not
    exist the instance is below the size threshold and the result is
    :class:`Inconclusive`. With ``trim`` the returned classes are cut to
    exactly ``n`` vertices; otherwise the surviving classes are kept whole.
    """
    k = H.k
    if k < 2:
        raise ValueError("need k >= 2 vertex classes")
    if not n >= m >= 2:
        raise ValueError("need n >= m >= 2")
    if min(len(c) for c in H.classes) < n:
        raise ValueError(f"every class needs at least n={n} vertices")
    if r < 3:
        raise ValueError("r must be at least 3")
    Wk = H.classes[-1][:n]
    U = [tuple(c) for c in H.classes[:-1]]
    separations = []

    for A in combinations(Wk, m):
        meet = space.full
        for v in A:
            meet &= space.hull_mask(f.image_mask(H.edges_at(v)))
        if meet:
            return Case1(A, lowest(meet))
        sub = CompletePartiteHypergraph(U + [Wk])
        already = check_separable_subset(space, f, sub, A)
        if already is not None:
            separations.append((A,) + already)
            continue
        base = list(product(*U))
        fs = [LabeledFunction({sigma: f(sigma + (v,)) for sigma in base}) for v in A]
        try:
            cert = large_separated_pairs(space, fs, r)
        except (RadonPremiseError, SeparationError) as exc:
            return Inconclusive("separated-pairs", f"A={A}: {exc}")
        lower = CompletePartiteHypergraph(U)
        kept = set(cert.E0)
        found = None
        for s in range(max(len(c) for c in U), n - 1, -1):
            sizes = tuple(min(len(c), s) for c in U)
            found = find_complete_partite(lower, kept, k - 1, sizes)
            if found is not None:
                break
        if found is None:
            return Inconclusive(
                "partite-finder",
                f"A={A}: E0 keeps {len(kept)} of {len(base)} edges and holds no "
                f"complete {k - 1}-partite piece with classes of size {n}")
        U = [tuple(c) for c in found]
        separations.append((A, A[cert.i], A[cert.j], cert.gamma))

    W = [c[:n] if trim else c for c in U] + [Wk]
    final = CompletePartiteHypergraph(W)
    for A in combinations(Wk, m):
        if check_separable_subset(space, f, final, A) is None:
            raise VerificationError(f"m-subset {A} lost its separation", final)
    return Case2(final.classes, separations)
