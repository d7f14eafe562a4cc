"""The weak colorful run: refine a complete partite hypergraph of transversals until a witness appears."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import product

from ..errors import HypothesisViolation, VerificationError
from ..pointset import PointSet, lowest, mask_of
from ..space import ConvexitySpace, Halfspace
from .hypergraph import CompletePartiteHypergraph
from .lemmas import Case1, Inconclusive, LabeledFunction, check_separable_subset, refine_for_any_f


@dataclass
class MTupleWitness:
    family: int
    members: tuple[int, ...]
    point: int


@dataclass
class VennRow:
    pattern: tuple[bool, ...]
    edge: tuple[int, ...]
    point: int


@dataclass
class VennCertificate:
    """``d+1`` halfspaces with every sign pattern realized by an edge image.

    ``pairs[i]`` is the separated pair ``(u_i, v_i)`` of class i, stored
    as member indices of family i; an edge choosing ``u_i`` lands in
    ``halfspaces[i].gamma``.
    """
    halfspaces: list[Halfspace]
    pairs: list[tuple[int, int]]
    rows: list[VennRow] = field(default_factory=list)


ColorfulOutcome = MTupleWitness | VennCertificate | Inconclusive


def _masks(space: ConvexitySpace, families) -> list[list[int]]:
    out = []
    for fam in families:
        row = []
        for C in fam:
            m = C.mask if isinstance(C, PointSet) else mask_of(C)
            row.append(space.check_mask(m))
        out.append(row)
    return out


def _check_hypothesis(space: ConvexitySpace, fams: list[list[int]]) -> None:
    for i, fam in enumerate(fams):
        for a, C in enumerate(fam):
            if not space.is_convex_mask(C):
                raise HypothesisViolation(f"member {a} of family {i} is not convex", PointSet.from_mask(C))
    for combo in product(*(range(len(f)) for f in fams)):
        meet = space.full
        for i, a in enumerate(combo):
            meet &= fams[i][a]
        if not meet:
            raise HypothesisViolation("colorful hypothesis fails: transversal has empty intersection", combo)


def weak_colorful_run(space: ConvexitySpace, families: Sequence[Sequence], m: int, r: int) -> ColorfulOutcome:
    """Run the refinement on ``K^{d+1}(p)`` built from ``d+1`` families of ``p`` convex sets.

    Vertex ``i*p + a`` stands for member ``a`` of family ``i``; an edge is
    a transversal and ``f`` sends it to the smallest common point of its
    members. Round ``s`` (for ``s = 0..d``) puts class ``d - s`` last and
    refines. A Case1 answer in any round is returned as an
    :class:`MTupleWitness`. If every round separates, one separated pair
    per class is read off and the resulting ``K^{d+1}(2)`` yields a
    :class:`VennCertificate`. Stalls come back as :class:`Inconclusive`.
    """
    k = len(families)
    if k < 2:
        raise ValueError("need at least two families")
    sizes = {len(f) for f in families}
    if len(sizes) != 1:
        raise ValueError("all families must have the same size p")
    p = sizes.pop()
    if p < 1:
        raise ValueError("families must be non-empty")
    if m < 2:
        raise ValueError("m must be at least 2")
    fams = _masks(space, families)
    _check_hypothesis(space, fams)
    if p < m:
        return Inconclusive("size", f"p={p} is smaller than m={m}; no m-subset of a class exists")

    def f_of(edge: tuple[int, ...]) -> int:
        meet = space.full
        for i, v in enumerate(edge):
            meet &= fams[i][v - i * p]
        return lowest(meet)

    cur = [tuple(range(i * p, (i + 1) * p)) for i in range(k)]
    for step in range(k):
        target = k - 1 - step
        order = [i for i in range(k) if i != target] + [target]
        H = CompletePartiteHypergraph([cur[i] for i in order])
        values = {}
        for e in H.edges():
            orig = [0] * k
            for pos, i in enumerate(order):
                orig[i] = e[pos]
            values[e] = f_of(tuple(orig))
        out = refine_for_any_f(space, H, LabeledFunction(values), m, m, r, trim=False)
        if isinstance(out, Inconclusive):
            return Inconclusive(f"round {step}: {out.stage}", out.reason)
        if isinstance(out, Case1):
            members = tuple(v - target * p for v in out.A)
            return MTupleWitness(target, members, out.point)
        for pos, i in enumerate(order):
            cur[i] = out.classes[pos]

    final = CompletePartiteHypergraph(cur)
    f_final = LabeledFunction({e: f_of(e) for e in final.edges()})
    halfspaces, pairs = [], []
    for i in range(k):
        found = check_separable_subset(space, f_final, final, cur[i][:m])
        if found is None:
            raise VerificationError(f"class {i} is not separable after refinement", cur[i])
        u, v, gamma = found
        halfspaces.append(gamma)
        pairs.append((u, v))
    rows = []
    for pattern in product((True, False), repeat=k):
        edge = tuple(pairs[i][0] if side else pairs[i][1] for i, side in enumerate(pattern))
        x = f_of(edge)
        if any((x in halfspaces[i].gamma) != side for i, side in enumerate(pattern)):
            raise VerificationError(f"edge {edge} misses sign pattern {pattern}", x)
        rows.append(VennRow(pattern, tuple(v - i * p for i, v in enumerate(edge)), x))
    return VennCertificate(halfspaces, [(u - i * p, v - i * p) for i, (u, v) in enumerate(pairs)], rows)


def verify_outcome(space: ConvexitySpace, families: Sequence[Sequence], outcome: ColorfulOutcome,
                   m: int) -> list[str]:
    """Recompute a witness against the raw families; returns failed conditions."""
    fams = _masks(space, families)
    problems = []
    if isinstance(outcome, MTupleWitness):
        fam = fams[outcome.family]
        if len(set(outcome.members)) != m:
            problems.append(f"witness does not name {m} distinct members")
        for a in outcome.members:
            if not 0 <= a < len(fam):
                problems.append(f"member {a} out of range")
            elif not fam[a] >> outcome.point & 1:
                problems.append(f"point {outcome.point} not in member {a}")
    elif isinstance(outcome, VennCertificate):
        k = len(fams)
        if len(outcome.halfspaces) != k:
            problems.append("need one halfspace per family")
        for g in outcome.halfspaces:
            a, b = g.gamma.mask, g.complement.mask
            if a | b != space.full or a & b or not space.is_convex_mask(a) or not space.is_convex_mask(b):
                problems.append(f"{g} is not a halfspace")
        seen = set()
        for row in outcome.rows:
            seen.add(row.pattern)
            for i, a in enumerate(row.edge):
                if a != outcome.pairs[i][0 if row.pattern[i] else 1]:
                    problems.append(f"row {row.pattern} uses the wrong vertex in class {i}")
                if not fams[i][a] >> row.point & 1:
                    problems.append(f"point {row.point} is not common to edge {row.edge}")
                if (row.point in outcome.halfspaces[i].gamma) != row.pattern[i]:
                    problems.append(f"point {row.point} has the wrong side of halfspace {i}")
        if len(seen) != 2 ** k:
            problems.append(f"only {len(seen)} of {2 ** k} sign patterns realized")
    return problems
