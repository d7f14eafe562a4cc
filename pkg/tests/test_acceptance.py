"""Acceptance suite, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line (visible with ``pytest -s``
or by running this file directly) before asserting.
"""
import random
import sys
import time
from fractions import Fraction
from itertools import product
from math import comb

import oracles
from convspace import PointSet
from convspace.bk import bk_embed, check_certificates, verify_nerve_isomorphism
from convspace.builtins import all_builtin_spaces, box_lower_bound_family, make_box_space, make_lattice_space
from convspace.colorful import (
    CompletePartiteHypergraph,
    Inconclusive,
    MTupleWitness,
    VennCertificate,
    count_partite_copies,
    find_complete_partite,
    large_separated_pairs,
    verify_outcome,
    verify_separated_pair,
    weak_colorful_run,
)
from convspace.fractional import count_intersecting_tuples, fh_report, max_intersecting_subfamily
from convspace.invariants import (
    box_radon_formula,
    dual_vc_dimension,
    halfspace_family,
    helly_number_direct,
    helly_number_independence,
    invariant_report,
    radon_number,
)
from convspace.selftest import (
    crossing_lines,
    random_explicit_space,
    random_family,
    random_lemma_instance,
    shared_point_families,
)


def _report(n, ok, detail, started, limit=None):
    took = time.perf_counter() - started
    if limit is not None and took >= limit:
        ok, detail = False, f"{detail}; took {took:.1f}s, limit {limit}s"
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail} ({took:.2f}s)")
    assert ok, detail


def test_criterion_01_box_radon():
    t0 = time.perf_counter()
    got = (radon_number(make_box_space(1, 5)), radon_number(make_box_space(2, 4)))
    formula = (box_radon_formula(1), box_radon_formula(2))
    _report(1, got == (3, 4) == formula, f"radon box 1x5, 2x4 = {got}, formula {formula}", t0, 10)


def test_criterion_02_lattice_cube_helly():
    t0 = time.perf_counter()
    got = tuple(helly_number_independence(make_lattice_space(d, 2)) for d in (1, 2))
    _report(2, got == (2, 4), f"helly of {{0,1}}^1, {{0,1}}^2 = {got}", t0, 10)


def test_criterion_03_helly_below_radon():
    t0 = time.perf_counter()
    bad, tested = [], 0
    for space in all_builtin_spaces(16):
        r = radon_number(space)
        if r is None:
            continue
        tested += 1
        if not helly_number_independence(space) < r:
            bad.append(repr(space))
    _report(3, not bad, f"{tested} spaces with a Radon number, violations {bad}", t0)


def test_criterion_04_helly_methods_agree():
    t0 = time.perf_counter()
    rng = random.Random(4)
    spaces = all_builtin_spaces(10) + [random_explicit_space(rng, rng.randint(1, 10)) for _ in range(50)]
    diverge = [repr(s) for s in spaces if helly_number_independence(s) != helly_number_direct(s)]
    _report(4, not diverge, f"{len(spaces)} spaces, divergent {diverge}", t0)


def test_criterion_05_dual_vc_of_halfspaces():
    t0 = time.perf_counter()
    chains = [make_box_space(1, s) for s in range(2, 8)] + [make_lattice_space(1, s) for s in range(2, 8)]
    chain_vals = {dual_vc_dimension(halfspace_family(s)) for s in chains}
    grid = dual_vc_dimension(halfspace_family(make_lattice_space(2, 3)))
    _report(5, chain_vals == {1} and grid == 2, f"chains {sorted(chain_vals)}, 3x3 lattice {grid}", t0, 60)


def test_criterion_06_bound_suite():
    t0 = time.perf_counter()
    spaces = [s for s in all_builtin_spaces(16) if not (s.kind == "lattice" and s.params["dim"] == 4)]
    failed, onn = [], 0
    for s in spaces:
        rep = invariant_report(s, direct=False)
        failed += [(repr(s), b.name) for b in rep.bound_checks if b.holds is False]
        onn += any(b.name == "onn" and b.holds for b in rep.bound_checks)
    lattices = sum(s.kind == "lattice" for s in spaces)
    ok = not failed and onn == lattices
    _report(6, ok, f"{len(spaces)} halfspace systems, Onn checked on {onn}/{lattices} lattices, failed {failed}", t0)


def test_criterion_07_lower_bound_family():
    t0 = time.perf_counter()
    F = box_lower_bound_family(2, 6)
    rep = fh_report(F, 2)
    got = (rep.intersecting_k_tuples, rep.max_intersecting, rep.alpha, rep.beta)
    want = (9, 2, Fraction(9, 15), Fraction(1, 3))
    _report(7, got == want, f"(tuples, max, alpha, beta) = {got}", t0)


def test_criterion_08_bk_embedding():
    t0 = time.perf_counter()
    rng = random.Random(8)
    bad = []
    for case in range(100):
        F = random_family(rng, rng.randint(1, 6), rng.randint(1, 5))
        emb = bk_embed(F)
        if not verify_nerve_isomorphism(F, emb.as_family()) or check_certificates(emb):
            bad.append(case)
    _report(8, not bad, f"100 systems, failures {bad}", t0, 60)


def _independent_pair_check(space, fs, cert, r):
    convex = {PointSet.from_mask(m) for m in space.convex_masks()}
    g, gc = cert.gamma.gamma, cert.gamma.complement
    E = list(fs[0].domain)
    return (
        g in convex and gc in convex and (g | gc) == PointSet(range(space.n)) and g.isdisjoint(gc)
        and (r - 1) * len(cert.E0) >= len(E) and set(cert.E0) <= set(E)
        and all(fs[cert.i](e) in g for e in cert.E0)
        and all(fs[cert.j](e) in gc for e in cert.E0)
    )


def test_criterion_09_separated_pairs():
    t0 = time.perf_counter()
    rng = random.Random(9)
    bad = []
    for case in range(200):
        space, fs, r = random_lemma_instance(rng)
        cert = large_separated_pairs(space, fs, r)
        if not _independent_pair_check(space, fs, cert, r) or verify_separated_pair(space, fs, cert, r):
            bad.append(case)
    _report(9, not bad, f"200 instances, failures {bad}", t0)


def _partite_agrees(H, kept, s):
    expect = oracles.partite_copies(H.classes, kept, s)
    found = find_complete_partite(H, kept, H.k, s)
    return count_partite_copies(H, kept, s) == len(expect) and found == (expect[0] if expect else None)


def test_criterion_10_partite_finder():
    t0 = time.perf_counter()
    H = CompletePartiteHypergraph.complete(2, 3)
    edges = list(H.edges())
    checked, bad = 0, []
    for mask in range(1 << len(edges)):
        kept = {e for b, e in enumerate(edges) if mask >> b & 1}
        for s in (1, 2, 3, (1, 2)):
            checked += 1
            if not _partite_agrees(H, kept, s):
                bad.append((mask, s))
    rng = random.Random(10)
    for k, t in ((2, 4), (3, 3)):
        G = CompletePartiteHypergraph.complete(k, t)
        all_edges = list(G.edges())
        for _ in range(100):
            kept = {e for e in all_edges if rng.random() < 0.7}
            for s in (1, 2):
                checked += 1
                if not _partite_agrees(G, kept, s):
                    bad.append((k, t, sorted(kept), s))
    _report(10, not bad, f"{checked} comparisons, disagreements {len(bad)}", t0)


def _venn_patterns_ok(space, families, cert):
    convex = {PointSet.from_mask(m) for m in space.convex_masks()}
    if not all(g.gamma in convex and g.complement in convex for g in cert.halfspaces):
        return False
    seen = set()
    for row in cert.rows:
        members = [families[i][a] for i, a in enumerate(row.edge)]
        if not all(row.point in PointSet(c) for c in members):
            return False
        if tuple(row.point in g.gamma for g in cert.halfspaces) != row.pattern:
            return False
        seen.add(row.pattern)
    return seen == set(product((True, False), repeat=len(families)))


def test_criterion_11_colorful_pipeline():
    t0 = time.perf_counter()
    notes, ok = [], True

    space = make_box_space(2, 3)
    fams = shared_point_families(space, 2, 3, 4, random.Random(0))
    out = weak_colorful_run(space, fams, 2, 4)
    good = (isinstance(out, MTupleWitness) and not verify_outcome(space, fams, out, 2)
            and all(out.point in PointSet(fams[out.family][a]) for a in out.members))
    ok &= good
    notes.append(f"shared point: {type(out).__name__}")

    space, fams = crossing_lines(3)
    out = weak_colorful_run(space, fams, 2, 4)
    good = isinstance(out, VennCertificate) and not verify_outcome(space, fams, out, 2) \
        and _venn_patterns_ok(space, fams, out)
    ok &= good
    notes.append(f"crossing lines: {type(out).__name__} with {len(getattr(out, 'rows', []))} patterns")

    # chain halfspaces have dual VC dimension 1, so no chain instance can show 4 patterns
    chain_dual = dual_vc_dimension(halfspace_family(make_box_space(1, 7)))
    ok &= chain_dual == 1
    notes.append(f"chain dual VC {chain_dual}")

    # flagged sub-threshold: one set per family, fewer than m
    out = weak_colorful_run(make_box_space(1, 3), [[[0, 1]], [[1, 2]]], 2, 3)
    ok &= isinstance(out, Inconclusive) and not verify_outcome(make_box_space(1, 3), [[[0, 1]], [[1, 2]]], out, 2)
    notes.append(f"sub-threshold: {type(out).__name__}")
    _report(11, ok, "; ".join(notes), t0)


def test_criterion_12_fractional_counts():
    t0 = time.perf_counter()
    rng = random.Random(12)
    bad = []
    for case in range(100):
        F = random_family(rng, rng.randint(1, 6), rng.randint(1, 12))
        k = rng.randint(1, min(4, len(F)))
        sets = [set(s) for s in F]
        tuples = oracles.intersecting_tuples(sets, k)
        best = oracles.max_intersecting(sets)
        rep = fh_report(F, k)
        if (count_intersecting_tuples(F, k) != tuples or max_intersecting_subfamily(F)[0] != best
                or rep.alpha != Fraction(tuples, comb(len(F), k)) or rep.beta != Fraction(best, len(F))):
            bad.append(case)
    _report(12, not bad, f"100 families, mismatches {bad}", t0)


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
