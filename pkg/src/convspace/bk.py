"""Realize any set system's intersection pattern by point sets cut out by quadratic inequalities in the plane.

Each nonempty Venn region of the input gets its own point ``(a, 0)`` on
the x-axis, with ``a = 1, 2, ..., t``. Member ``C_i`` collects the points
of the regions lying in ``S_i``. A finite set ``b_1 < ... < b_q`` of such
points is exactly the solution set of

    x - b_1 >= 0,  b_q - x >= 0,  y >= 0,  (x - b_i)(x - b_{i+1}) - y >= 0,

so each realized intersection gets a certificate of degree at most two.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .family import SetFamily
from .invariants import venn_atoms
from .pointset import PointSet

Term = tuple[int, int, Fraction]


@dataclass(frozen=True)
class Inequality:
    """``sum(c * x**i * y**j for i, j, c in terms) >= 0``."""

    terms: tuple[Term, ...]

    @classmethod
    def of(cls, *terms) -> Inequality:
        acc: dict[tuple[int, int], Fraction] = {}
        for i, j, c in terms:
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + Fraction(c)
        return cls(tuple((i, j, c) for (i, j), c in sorted(acc.items()) if c))

    @property
    def degree(self) -> int:
        return max((i + j for i, j, _ in self.terms), default=0)

    def evaluate(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x**i * y**j for i, j, c in self.terms), Fraction(0))

    def holds(self, x, y) -> bool:
        return self.evaluate(x, y) >= 0


@dataclass(frozen=True)
class Certificate:
    points: tuple[Fraction, ...]
    inequalities: tuple[Inequality, ...]
    realized_by: tuple[int, ...]


def certificate_for(points: Sequence[Fraction], realized_by: Sequence[int] = ()) -> Certificate:
    pts = tuple(sorted(Fraction(p) for p in points))
    if not pts:
        # y >= 0 and -1 - y >= 0 have no common solution
        ineqs = (Inequality.of((0, 1, 1)), Inequality.of((0, 0, -1), (0, 1, -1)))
        return Certificate(pts, ineqs, tuple(realized_by))
    lo, hi = pts[0], pts[-1]
    ineqs = [Inequality.of((1, 0, 1), (0, 0, -lo)), Inequality.of((0, 0, hi), (1, 0, -1)), Inequality.of((0, 1, 1))]
    pairs = list(zip(pts, pts[1:])) or [(lo, lo)]
    for a, b in pairs:
        ineqs.append(Inequality.of((2, 0, 1), (1, 0, -(a + b)), (0, 0, a * b), (0, 1, -1)))
    return Certificate(pts, tuple(ineqs), tuple(realized_by))


@dataclass
class BKEmbedding:
    atom_points: list[Fraction]
    atoms: list[PointSet]
    sets: list[frozenset[Fraction]]
    certificates: list[Certificate] = field(default_factory=list)

    def as_family(self) -> SetFamily:
        """The C_i as a family over atom indices ``0..t-1``."""
        index = {a: j for j, a in enumerate(self.atom_points)}
        return SetFamily(len(self.atom_points), [sorted(index[a] for a in c) for c in self.sets])


def _nerve(masks: Sequence[int]) -> dict[tuple[int, ...], int]:
    out = {}
    m = len(masks)
    for size in range(1, m + 1):
        for I in combinations(range(m), size):
            meet = -1
            for i in I:
                meet &= masks[i]
            out[I] = meet
    return out


def bk_embed(F: SetFamily) -> BKEmbedding:
    """Embed ``F`` into points on the x-axis with one certificate per realized intersection."""
    if not len(F):
        raise ValueError("bk_embed needs at least one set")
    regions = [(sig, pts) for sig, pts in venn_atoms(F) if any(sig)]
    atom_points = [Fraction(j + 1) for j in range(len(regions))]
    sets = [frozenset(a for a, (sig, _) in zip(atom_points, regions) if sig[i]) for i in range(len(F))]
    masks = [sum(1 << j for j, (sig, _) in enumerate(regions) if sig[i]) for i in range(len(F))]
    by_config: dict[int, tuple[int, ...]] = {}
    for I, meet in _nerve(masks).items():
        by_config.setdefault(meet, I)
    certs = [
        certificate_for([atom_points[j] for j in range(len(regions)) if meet >> j & 1], I)
        for meet, I in sorted(by_config.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[1]))
    ]
    return BKEmbedding(atom_points, [pts for _, pts in regions], sets, certs)


def verify_nerve_isomorphism(F: SetFamily, G: SetFamily) -> bool:
    """True iff every index set I has ``∩F_I ≠ ∅ ⇔ ∩G_I ≠ ∅``."""
    if len(F) != len(G):
        raise ValueError(f"families differ in size: {len(F)} vs {len(G)}")
    nf, ng = _nerve(F.masks), _nerve(G.masks)
    return all(bool(nf[I]) == bool(ng[I]) for I in nf)


def check_certificates(emb: BKEmbedding) -> list[str]:
    """Exact checks of every certificate; returns a list of failures.

    Each inequality must have degree at most two, every configured point
    ``(a, 0)`` must satisfy it, and on the line ``y = 0`` the solutions
    among the atom points, the bounding value ``t + 1`` and all midpoints
    between neighbours must be the configured points and nothing else.
    """
    problems = []
    t = len(emb.atom_points)
    grid = list(emb.atom_points) + [Fraction(t + 1)]
    probes = [Fraction(1, 2)] + [v for a in grid for v in (a, a + Fraction(1, 2))]
    for cert in emb.certificates:
        for q in cert.inequalities:
            if q.degree > 2:
                problems.append(f"{cert.realized_by}: degree {q.degree} inequality")
        for x in probes:
            inside = all(q.holds(x, 0) for q in cert.inequalities)
            if inside != (x in cert.points):
                problems.append(f"{cert.realized_by}: x={x} classified wrongly")
        if cert.realized_by:
            meet = frozenset.intersection(*(emb.sets[i] for i in cert.realized_by))
            if meet != frozenset(cert.points):
                problems.append(f"{cert.realized_by}: certificate points differ from the intersection")
    return problems
