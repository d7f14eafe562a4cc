"""Fractional Helly counts on the box lower-bound family.

The family of n axis slabs in a d-dimensional box grid has many
intersecting d-tuples yet no intersecting subfamily larger than d.

Run: python3 demos/02_fractional_helly.py
"""
from fractions import Fraction
from math import comb

from convspace.builtins import box_lower_bound_family
from convspace.fractional import fh_report, optimal_beta

for d in (1, 2, 3):
    for n in (d * 2, d * 3, d * 4):
        rep = fh_report(box_lower_bound_family(d, n), d)
        print(f"d={d} n={n:>2}: {rep.intersecting_k_tuples:>3} of {comb(n, d):>3} "
              f"{d}-tuples intersect (alpha={rep.alpha}), largest intersecting subfamily "
              f"{rep.max_intersecting} (beta={rep.beta})")

# Best beta promised for a given alpha when the fractional Helly number is d+1.
print()
for alpha in ("1/2", "3/4", "9/10"):
    print(f"alpha={alpha}: optimal beta for d=2 is {optimal_beta(Fraction(alpha), 2, digits=8)}")
