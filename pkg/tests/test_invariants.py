import random
from fractions import Fraction
from decimal import Decimal

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from convspace import PointSet, SetFamily
from convspace.builtins import all_builtin_spaces, box_lower_bound_family, make_box_space, make_lattice_space
from convspace.errors import VerificationError
from convspace.fractional import (
    colex_tuples,
    count_intersecting_tuples,
    fh_report,
    max_intersecting_subfamily,
    optimal_beta,
)
from convspace.invariants import (
    box_radon_formula,
    check_bounds,
    dual_shatter,
    dual_vc_dimension,
    halfspace_family,
    helly_number_direct,
    helly_number_independence,
    helly_witness,
    invariant_report,
    radon_monotonicity_violation,
    radon_number,
    radon_partition,
    shattered_set,
    vc_dimension,
    venn_atoms,
)
from convspace.selftest import random_explicit_space, random_family
from convspace.space import hull


def _hull(space):
    return lambda Y: set(hull(space, Y))


@pytest.mark.parametrize("space", all_builtin_spaces(9, dims=(1, 2, 3)), ids=repr)
def test_radon_matches_brute_force(space):
    assert radon_number(space) == oracles.radon_number(_hull(space), space.n)
    assert radon_monotonicity_violation(space) is None


def test_radon_examples():
    assert radon_number(make_box_space(1, 5)) == 3
    assert radon_number(make_box_space(2, 4)) == 4
    assert [box_radon_formula(d) for d in (1, 2, 3, 4)] == [3, 4, 5, 5]
    assert radon_number(make_lattice_space(2, 2)) is None
    A, B = radon_partition(make_box_space(1, 3), [0, 1, 2])
    assert A == PointSet([0, 2]) and B == PointSet([1])


def test_radon_partition_is_genuine():
    s = make_lattice_space(2, 3)
    # the unit square's diagonals cross off the lattice
    assert radon_partition(s, [0, 1, 3, 4]) is None
    for Y in ([0, 2, 6, 8, 4], [0, 1, 3, 4, 8]):
        A, B = radon_partition(s, Y)
        assert (A | B) == PointSet(Y) and A.isdisjoint(B)
        assert not hull(s, A).isdisjoint(hull(s, B))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_helly_methods_match_definition(seed):
    rng = random.Random(seed)
    space = random_explicit_space(rng, rng.randint(1, 5), members=rng.randint(0, 4))
    convex = [frozenset(PointSet.from_mask(c)) for c in space.convex_masks()]
    assume(len(convex) <= 14)  # the oracle scans every subfamily
    expected = oracles.helly_number(convex)
    assert helly_number_independence(space) == expected
    assert helly_number_direct(space) == expected


def test_doignon_and_box_helly():
    assert helly_number_independence(make_lattice_space(1, 2)) == 2
    assert helly_number_independence(make_lattice_space(2, 2)) == 4
    assert helly_number_independence(make_lattice_space(3, 2)) == 8
    assert helly_number_independence(make_box_space(2, 3)) == 2
    w = helly_witness(make_lattice_space(2, 2))
    assert w == PointSet(range(4))


def test_direct_search_returns_minimal_family():
    from convspace.invariants import helly_direct_search
    space = make_lattice_space(2, 3)
    h, fam = helly_direct_search(space)
    assert h == len(fam) == 4
    meet = lambda F: set.intersection(*map(set, F)) if F else set(range(space.n))
    assert not meet(fam)
    assert all(meet(fam[:i] + fam[i + 1:]) for i in range(len(fam)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(0, n - 1)), max_size=6))))
def test_vc_and_dual_vc_against_brute_force(data):
    n, sets = data
    F = SetFamily(n, sets)
    assert vc_dimension(F) == oracles.vc_dimension(sets, n)
    assert dual_vc_dimension(F) == oracles.dual_vc_dimension(sets, n)
    sh = shattered_set(F)
    assert not sets or len({frozenset(s) & frozenset(sh) for s in sets}) == 2 ** len(sh)
    dv = dual_vc_dimension(F)
    assert all(dual_shatter(F, k) == 2**k for k in range(dv + 1))
    if dv < len(F) and n:
        assert dual_shatter(F, dv + 1) < 2 ** (dv + 1)


def test_venn_atoms_partition_ground():
    F = SetFamily(5, [[0, 1], [1, 2, 3]])
    atoms = venn_atoms(F)
    assert [(sig, a.to_list()) for sig, a in atoms] == [((1, 0), [0]), ((1, 1), [1]), ((0, 1), [2, 3]), ((0, 0), [4])]
    assert dual_shatter(F, 2) == 4 and dual_shatter(F, 1) == 2


@pytest.mark.parametrize("space,expected", [
    (make_box_space(1, 4), (3, 2, 2, 1)),
    (make_box_space(2, 3), (4, 2, 3, 2)),
    (make_lattice_space(2, 3), (5, 4, 3, 2)),
    (make_lattice_space(3, 2), (None, 8, 8, 3)),
], ids=repr)
def test_invariant_report_values(space, expected):
    rep = invariant_report(space)
    assert (rep.radon, rep.helly_independence, rep.vc_halfspaces, rep.dual_vc_halfspaces) == expected
    assert rep.helly_direct == rep.helly_independence
    assert rep.separable and not rep.violations


def test_halfspace_vc_against_brute_force():
    s = make_lattice_space(2, 3)
    hs = [set(g) for g in halfspace_family(s)]
    assert vc_dimension(halfspace_family(s)) == oracles.vc_dimension(hs, s.n)
    assert dual_vc_dimension(halfspace_family(s)) == oracles.dual_vc_dimension(hs, s.n)


def test_onn_only_for_lattices_and_vacuous_radon():
    rep = invariant_report(make_lattice_space(2, 2))
    onn = rep.bound("onn")
    assert onn.holds and onn.data["effective_radon"] == 5 and onn.data["ceiling"] == 9
    assert rep.bound("levi").holds is None
    assert all(b.name != "onn" for b in invariant_report(make_box_space(2, 2)).bound_checks)


def test_bound_violation_is_reported():
    checks = check_bounds(make_box_space(1, 3), radon=2, helly=2, vc=0, dual_vc=5, separable=True)
    bad = {b.name for b in checks if b.holds is False}
    assert bad == {"levi", "eq1"}


def test_helly_disagreement_raises(monkeypatch):
    import convspace.invariants as inv
    monkeypatch.setattr(inv, "helly_number_direct", lambda s: 99)
    with pytest.raises(VerificationError):
        inv.invariant_report(make_box_space(1, 3))


# ---- fractional Helly ----------------------------------------------------

def test_lower_bound_family_report():
    rep = fh_report(box_lower_bound_family(2, 6), 2)
    assert rep.intersecting_k_tuples == 9
    assert rep.alpha == Fraction(9, 15) and rep.beta == Fraction(1, 3)
    assert rep.max_intersecting == 2
    rep.check(box_lower_bound_family(2, 6))
    rep3 = fh_report(box_lower_bound_family(3, 6), 3)
    assert rep3.intersecting_k_tuples == 8 and rep3.max_intersecting == 3


def test_fractional_edge_cases():
    assert count_intersecting_tuples(SetFamily(3, [[0], [1], [2]]), 2) == 0
    assert max_intersecting_subfamily(SetFamily(3, [[1, 2]] * 4))[:2] == (4, 1)
    rep = fh_report(SetFamily(2, [[1]]), 1)
    assert rep.alpha == 1 and rep.beta == 1
    assert fh_report(SetFamily(2, [[]]), 1).alpha == 0
    with pytest.raises(ValueError):
        count_intersecting_tuples(SetFamily(2, [[0]]), 2)
    assert list(colex_tuples(SetFamily(1, [[0]] * 4), 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_optimal_beta():
    assert optimal_beta(Fraction(3, 4), 1) == Decimal("0.5")
    for d in (1, 2, 3):
        assert optimal_beta(1 - Fraction(1, 2) ** (d + 1), d) == Decimal("0.5")
    assert optimal_beta(Fraction(999999, 1000000), 1) > Decimal("0.99")
    assert len(str(optimal_beta(Fraction(1, 3), 2, digits=20)).split(".")[1]) >= 19
    with pytest.raises(ValueError):
        optimal_beta(1, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_fractional_counts_match_naive(seed):
    rng = random.Random(seed)
    F = random_family(rng, rng.randint(1, 5), rng.randint(1, 8))
    k = rng.randint(1, min(4, len(F)))
    sets = [set(s) for s in F]
    assert count_intersecting_tuples(F, k) == oracles.intersecting_tuples(sets, k)
    assert max_intersecting_subfamily(F)[0] == oracles.max_intersecting(sets)
    G = SetFamily(F.ground_size, list(F.sets) + [PointSet([0])])
    assert count_intersecting_tuples(G, k) >= count_intersecting_tuples(F, k)
    assert max_intersecting_subfamily(G)[0] >= max_intersecting_subfamily(F)[0]
