"""Realize a set system's intersection pattern with sets cut out by
low-degree polynomial inequalities on the plane.

Run: python3 demos/03_bk_embedding.py
"""
from pathlib import Path

from convspace import io
from convspace.bk import bk_embed, check_certificates, verify_nerve_isomorphism

F = io.parse_family(Path(__file__).parent / "data" / "triangle.sets")
print("input sets:", F.to_lists())

emb = bk_embed(F)
print("atoms on the x-axis:", [str(p) for p in emb.atom_points])
for i, C in enumerate(emb.sets):
    print(f"  C_{i} = {sorted(str(p) for p in C)}")

# Each realized intersection gets inequalities of degree at most two whose
# common solutions on the plane are exactly that intersection's atoms.
cert = max(emb.certificates, key=lambda c: len(c.points))
print(f"certificate for the meet of sets {list(cert.realized_by)} (atoms {[str(p) for p in cert.points]}): {len(cert.inequalities)} inequalities, "
      f"max degree {max(q.degree for q in cert.inequalities)}")
print("nerve preserved:", verify_nerve_isomorphism(F, emb.as_family()))
print("certificate problems:", check_certificates(emb) or "none")
