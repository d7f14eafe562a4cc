"""Desk-scale property suite and the seeded random instance generators it runs on.

Every property is a function ``(rng) -> witness | None``; a witness
means failure. Random draws depend only on the seed, so a failing run
reproduces exactly.
"""
from __future__ import annotations

import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any

from . import io
from .bk import bk_embed, check_certificates, verify_nerve_isomorphism
from .builtins import (
    all_builtin_spaces,
    box_lower_bound_family,
    grid_set,
    make_box_space,
    make_explicit_space,
    make_lattice_space,
)
from .colorful import (
    CompletePartiteHypergraph,
    LabeledFunction,
    count_partite_copies,
    find_complete_partite,
    large_separated_pairs,
    verify_outcome,
    verify_separated_pair,
    weak_colorful_run,
)
from .colorful.pipeline import MTupleWitness, VennCertificate
from .family import SetFamily
from .fractional import count_intersecting_tuples, fh_report, max_intersecting_subfamily
from .invariants import (
    dual_shatter,
    dual_vc_dimension,
    helly_number_direct,
    helly_number_independence,
    invariant_report,
    radon_monotonicity_violation,
    radon_number,
    venn_atoms,
)
from .pointset import PointSet, bits
from .space import ConvexitySpace, check_axioms, is_separable, separate

# ---- generators ----------------------------------------------------------


def random_family(rng: random.Random, ground: int, size: int, density: float = 0.5) -> SetFamily:
    return SetFamily(ground, [[x for x in range(ground) if rng.random() < density] for _ in range(size)])


def random_explicit_space(rng: random.Random, n: int, members: int | None = None) -> ConvexitySpace:
    members = rng.randint(1, 2 * n) if members is None else members
    return make_explicit_space(random_family(rng, n, members, rng.choice((0.3, 0.5, 0.7))))


LEMMA_SPACES = ((1, 3), (1, 5), (2, 2), (2, 3), (2, 4))


def random_lemma_instance(rng: random.Random, max_m: int = 3, max_e: int = 4):
    """A separable grid space, its Radon number and functions whose image hulls miss each other.

    Redraws until the hulls have empty common intersection.
    """
    d, side = rng.choice(LEMMA_SPACES)
    space = (make_box_space if rng.random() < 0.5 else make_lattice_space)(d, side)
    r = radon_number(space)
    # no subset has a Radon partition: the vacuous value |X| + 1 applies
    r = space.n + 1 if r is None else r
    m = rng.randint(2, max_m)
    size = rng.randint(1, max_e)
    while True:
        fs = []
        for _ in range(m):
            anchor = rng.randrange(space.n)
            near = [x for x in range(space.n) if rng.random() < 0.3] + [anchor]
            fs.append(LabeledFunction([rng.choice(near) for _ in range(size)]))
        meet = space.full
        for f in fs:
            meet &= space.hull_mask(f.image_mask())
        if not meet:
            return space, fs, r


def shared_point_families(space: ConvexitySpace, k: int, p: int, point: int, rng: random.Random):
    """k families of p convex sets, all containing ``point``."""
    fams = []
    for _ in range(k):
        fam = []
        for _ in range(p):
            extra = [x for x in range(space.n) if rng.random() < 0.3]
            fam.append(PointSet.from_mask(space.hull_mask(space.check_mask(sum(1 << x for x in extra) | 1 << point))))
        fams.append(fam)
    return fams


def crossing_lines(side: int = 3):
    """Two families of grid lines on a box grid: every row meets every column, rows are disjoint."""
    space = make_box_space(2, side)
    ends = (0, side - 1)
    rows = [grid_set(space, [(a, y) for y in range(side)]) for a in ends]
    cols = [grid_set(space, [(x, b) for x in range(side)]) for b in ends]
    return space, [rows, cols]


# ---- properties ----------------------------------------------------------


@dataclass
class Check:
    module: str
    name: str
    passed: bool
    witness: Any = None


@dataclass
class SelftestResult:
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_record(self) -> dict:
        return io.validate({
            "schema": "selftest", "version": io.VERSION, "seed": self.seed, "passed": self.passed,
            "checks": [{"module": c.module, "name": c.name, "passed": c.passed,
                        "witness": None if c.witness is None else repr(c.witness)} for c in self.checks],
        })


def _small_spaces(rng: random.Random) -> list[ConvexitySpace]:
    return all_builtin_spaces(9, dims=(1, 2)) + [random_explicit_space(rng, rng.randint(2, 7)) for _ in range(6)]


def _axioms(spaces):
    for s in spaces:
        rep = check_axioms(s)
        if not rep.ok:
            return s, rep.failures()
    return None


def _halfspaces_closed(rng):
    for s in _small_spaces(rng):
        hs = set(s.halfspace_masks())
        if 0 not in hs or s.full not in hs or any(s.full ^ g not in hs for g in hs):
            return s
    return None


def _separation_total(rng):
    for s in _small_spaces(rng):
        ok, _ = is_separable(s)
        if not ok:
            continue
        for c in s.convex_masks():
            for x in bits(s.full & ~c):
                if separate(s, c, x) is None:
                    return s, PointSet.from_mask(c), x
    return None


def _lattice_chain_is_box(rng):
    for side in (2, 3, 5):
        b, lat = make_box_space(1, side), make_lattice_space(1, side)
        for y in range(b.full + 1):
            if b.hull_mask(y) != lat.hull_mask(y):
                return side, PointSet.from_mask(y)
    return None


def _helly_agree(rng):
    spaces = all_builtin_spaces(9, dims=(1, 2)) + [random_explicit_space(rng, rng.randint(2, 8)) for _ in range(10)]
    for s in spaces:
        a, b = helly_number_independence(s), helly_number_direct(s)
        if a != b:
            return s, a, b
    return None


def _radon_monotone(rng):
    for s in all_builtin_spaces(9, dims=(1, 2)) + [random_explicit_space(rng, rng.randint(2, 7)) for _ in range(4)]:
        n = radon_monotonicity_violation(s)
        if n is not None:
            return s, n
    return None


def _bounds(rng):
    for s in all_builtin_spaces(9, dims=(1, 2)) + [make_box_space(3, 2), make_lattice_space(3, 2)]:
        rep = invariant_report(s)
        if rep.violations:
            return s, rep.violations
    return None


def _dual_shatter_consistent(rng):
    for _ in range(10):
        F = random_family(rng, rng.randint(2, 7), rng.randint(1, 5))
        dv = dual_vc_dimension(F)
        if any(dual_shatter(F, k) != 2**k for k in range(dv + 1)):
            return F
        if dv + 1 <= len(F) and dual_shatter(F, dv + 1) == 2 ** (dv + 1):
            return F
        atoms = venn_atoms(F)
        masks = [a.mask for _, a in atoms]
        if len({s for s, _ in atoms}) != len(atoms) or sum(masks) != F.full or any(
                a & b for a, b in combinations(masks, 2)):
            return F
    return None


def _fh_counts(rng):
    for _ in range(10):
        F = random_family(rng, rng.randint(1, 6), rng.randint(1, 8))
        k = rng.randint(1, min(4, len(F)))
        naive = sum(1 for T in combinations(F.masks, k) if _meet(T))
        if naive != count_intersecting_tuples(F, k):
            return F, k
        fh_report(F, k).check(F)
    for d, n in ((1, 3), (2, 4), (2, 6), (3, 6)):
        rep = fh_report(box_lower_bound_family(d, n), d)
        if rep.alpha * comb(n, d) != (n // d) ** d or rep.beta * n != d:
            return d, n
    return None


def _meet(masks: Iterable[int]) -> int:
    out = -1
    for m in masks:
        out &= m
    return out


def _fh_monotone(rng):
    F = random_family(rng, 5, 6)
    G = SetFamily(F.ground_size, list(F.sets) + [PointSet(range(rng.randint(1, 5)))])
    if max_intersecting_subfamily(G)[0] < max_intersecting_subfamily(F)[0]:
        return F, G
    if count_intersecting_tuples(G, 2) < count_intersecting_tuples(F, 2):
        return F, G
    return None


def _bk(rng):
    for _ in range(20):
        F = random_family(rng, rng.randint(1, 6), rng.randint(1, 5))
        emb = bk_embed(F)
        nonzero = [a for s, a in venn_atoms(F) if any(s)]
        if len(emb.atom_points) != len(nonzero):
            return F, "atom count"
        if not verify_nerve_isomorphism(F, emb.as_family()):
            return F, "nerve"
        probs = check_certificates(emb)
        if probs:
            return F, probs
    return None


def _separated_pairs(rng):
    for _ in range(25):
        space, fs, r = random_lemma_instance(rng)
        cert = large_separated_pairs(space, fs, r)
        probs = verify_separated_pair(space, fs, cert, r)
        gw = sum(cert.gamma_weights)
        if probs or (r - 1) * gw > (r - 2) * cert.N or (r - 1) * (cert.N - gw) < cert.N:
            return space, fs, probs
    return None


def _partite(rng):
    for k, t in ((2, 3), (2, 4), (3, 2)):
        H = CompletePartiteHypergraph.complete(k, t)
        edges = list(H.edges())
        for _ in range(10):
            kept = {e for e in edges if rng.random() < 0.7}
            for s in range(1, t + 1):
                found = find_complete_partite(H, kept, k, s)
                if found is not None and any(e not in kept for e in CompletePartiteHypergraph(found).edges()):
                    return k, t, sorted(kept), s
                if (found is None) != (count_partite_copies(H, kept, s) == 0):
                    return k, t, sorted(kept), s
    return None


def _colorful(rng):
    space = make_box_space(2, 3)
    fams = shared_point_families(space, 2, 3, rng.randrange(space.n), rng)
    out = weak_colorful_run(space, fams, 2, 4)
    if not isinstance(out, MTupleWitness) or verify_outcome(space, fams, out, 2):
        return "shared point", out
    space, fams = crossing_lines(3)
    out = weak_colorful_run(space, fams, 2, 4)
    if not isinstance(out, VennCertificate) or verify_outcome(space, fams, out, 2):
        return "crossing lines", out
    return None


def _round_trip(rng):
    records = [
        io.space_to_record(make_box_space(2, 3)),
        io.space_to_record(random_explicit_space(rng, 5)),
        io.family_to_record(random_family(rng, 6, 4)),
        io.fh_to_record(fh_report(box_lower_bound_family(2, 6), 2)),
        io.invariants_to_record(invariant_report(make_box_space(1, 4))),
        io.bk_to_record(bk_embed(random_family(rng, 5, 3))),
    ]
    for rec in records:
        for fmt in ("structured", "delimited"):
            if io.loads(io.dumps(rec, fmt)) != rec:
                return rec["schema"], fmt
    return None


PROPERTIES: list[tuple[str, str, Callable[[random.Random], Any]]] = [
    ("space-core", "check_axioms", lambda rng: _axioms(_small_spaces(rng))),
    ("space-core", "halfspaces_closed_under_complement", _halfspaces_closed),
    ("space-core", "separable_implies_separate", _separation_total),
    ("builtin-spaces", "lattice_chain_equals_box_chain", _lattice_chain_is_box),
    ("builtin-spaces", "bk_embed", _bk),
    ("invariants", "helly_methods_agree", _helly_agree),
    ("invariants", "radon_monotone", _radon_monotone),
    ("invariants", "bound_suite", _bounds),
    ("invariants", "dual_shatter_and_atoms", _dual_shatter_consistent),
    ("fractional-helly", "tuple_counts", _fh_counts),
    ("fractional-helly", "monotone_under_additions", _fh_monotone),
    ("colorful-pipeline", "separated_pairs_verify", _separated_pairs),
    ("colorful-pipeline", "partite_finder_sound", _partite),
    ("colorful-pipeline", "weak_colorful_outcomes_verify", _colorful),
    ("cli", "records_round_trip", _round_trip),
]


def run_selftest(seed: int = 0, fixtures: Iterable[ConvexitySpace] = ()) -> SelftestResult:
    """Run every property once with ``random.Random(seed)`` per property.

    ``fixtures`` are extra spaces whose axioms are checked, which is how
    a corrupted explicit family surfaces as a ``check_axioms`` failure.
    """
    result = SelftestResult(seed)
    for module, name, prop in PROPERTIES:
        rng = random.Random(f"{seed}:{name}")
        try:
            witness = prop(rng)
        except Exception as exc:  # a crash is a failed property, reported with its cause
            witness = f"{type(exc).__name__}: {exc}"
        result.checks.append(Check(module, name, witness is None, witness))
    fixtures = list(fixtures)
    if fixtures:
        witness = _axioms(fixtures)
        result.checks.append(Check("space-core", "check_axioms[fixtures]", witness is None, witness))
    return result
