"""The separated-pair lemma and the weak colorful refinement, end to end.

Run: python3 demos/04_colorful_pipeline.py
"""
import json
from pathlib import Path

from convspace import io
from convspace.colorful import LabeledFunction, large_separated_pairs, verify_outcome, weak_colorful_run

DATA = Path(__file__).parent / "data"

# Two labelings of E = {0,1,2,3} on a five-point chain whose images have
# disjoint hulls. With r=3 the lemma must keep at least half of E, split by one halfspace.
rec = io.read_record(DATA / "lemma31-chain.json")
space = io.parse_space(rec["space"])
fs = [LabeledFunction(f) for f in rec["functions"]]
cert = large_separated_pairs(space, fs, rec["r"])
print(f"E0={list(cert.E0)}  f_{cert.i} lands in {cert.gamma.gamma.to_list()}, "
      f"f_{cert.j} in {cert.gamma.complement.to_list()}")

# Three colorful inputs: a shared point, crossing grid lines, and one too small to refine.
for name in ("colorful-shared.json", "colorful-crossing.json", "colorful-small.json"):
    rec = io.read_record(DATA / name)
    space = io.parse_space(rec["space"])
    out = weak_colorful_run(space, rec["families"], rec["m"], rec["r"])
    problems = verify_outcome(space, rec["families"], out, rec["m"])
    print(f"\n{name}: {type(out).__name__}, re-verification {'ok' if not problems else problems}")
    print(io.render_human(io.colorful_to_record(out)).rstrip())
