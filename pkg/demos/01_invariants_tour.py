"""A tour of the built-in spaces and their combinatorial invariants.

Run: python3 demos/01_invariants_tour.py
"""
from convspace.builtins import all_builtin_spaces, make_explicit_space
from convspace.family import SetFamily
from convspace.invariants import invariant_report
from convspace.space import is_separable

# Boxes and lattice grids up to nine points. Radon is None when no finite
# Radon number exists inside the grid (every subset of {0,1}^d is convex).
print(f"{'space':<22}{'radon':>6}{'helly':>6}{'vc':>4}{'dual':>6}  bounds")
for space in all_builtin_spaces(9, dims=(1, 2, 3)):
    rep = invariant_report(space)
    label = f"{space.kind} {space.params['side']}^{space.params['dim']}"
    held = ", ".join(b.name for b in rep.bound_checks if b.holds)
    print(f"{label:<22}{str(rep.radon):>6}{rep.helly_independence:>6}"
          f"{rep.vc_halfspaces:>4}{rep.dual_vc_halfspaces:>6}  {held}")

# Helly stays strictly below Radon everywhere above. Separability is the
# property the colorful machinery needs; here is a space without it.
arcs = make_explicit_space(SetFamily(3, [[0, 1], [1, 2]]))
ok, witness = is_separable(arcs)
print(f"\nexplicit arcs {{0,1}}, {{1,2}}: separable={ok}, witness (convex set, point) = {witness}")
