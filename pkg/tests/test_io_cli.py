import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from convspace import SetFamily, io
from convspace.bk import bk_embed
from convspace.builtins import box_lower_bound_family, make_box_space, make_explicit_space, make_lattice_space
from convspace.cli import run
from convspace.colorful import LabeledFunction, large_separated_pairs, weak_colorful_run
from convspace.errors import ParseError
from convspace.fractional import fh_report
from convspace.invariants import invariant_report
from convspace.selftest import crossing_lines, random_family, random_lemma_instance

DEMOS = Path(__file__).resolve().parent.parent / "demos"
DATA = DEMOS / "data"
GOLDEN = DEMOS / "golden"


def _both_ways(rec):
    for fmt in ("structured", "delimited"):
        assert io.loads(io.dumps(rec, fmt)) == rec
    assert io.render_human(rec)


# ---- round trips ---------------------------------------------------------

@pytest.mark.parametrize("space", [make_box_space(2, 3), make_lattice_space(1, 4),
                                   make_explicit_space(SetFamily(4, [[0, 1], [2]]), labels=["a", "b", "c", "d"])],
                         ids=repr)
def test_space_round_trip(space):
    rec = io.space_to_record(space)
    _both_ways(rec)
    back = io.space_from_record(io.loads(io.dumps(rec, "delimited")))
    assert back.convex_masks() == space.convex_masks()
    assert [g.label for g in back.ground] == [g.label for g in space.ground]


def test_family_and_fh_round_trip():
    rng = random.Random(5)
    for _ in range(20):
        F = random_family(rng, rng.randint(1, 6), rng.randint(1, 5))
        rec = io.family_to_record(F)
        _both_ways(rec)
        assert io.family_from_record(rec).to_lists() == F.to_lists()
        rep = fh_report(F, rng.randint(1, len(F)))
        frec = io.fh_to_record(rep)
        _both_ways(frec)
        assert io.fh_from_record(frec) == rep


def test_invariants_round_trip():
    rep = invariant_report(make_lattice_space(2, 2))
    rec = io.invariants_to_record(rep)
    _both_ways(rec)
    back = io.invariants_from_record(rec)
    assert (back.radon, back.helly_independence, back.dual_vc_halfspaces) == (None, 4, 2)
    assert [b.name for b in back.bound_checks] == [b.name for b in rep.bound_checks]


def test_bk_round_trip():
    emb = bk_embed(SetFamily(4, [[0, 1], [1, 2], [3]]))
    rec = io.bk_to_record(emb, True)
    _both_ways(rec)
    back = io.bk_from_record(rec)
    assert back.sets == emb.sets and back.atom_points == emb.atom_points
    assert back.certificates == emb.certificates


def test_certificate_round_trips():
    space, fs, r = random_lemma_instance(random.Random(2))
    cert = large_separated_pairs(space, fs, r)
    rec = io.lemma31_to_record(cert)
    _both_ways(rec)
    assert io.lemma31_from_record(rec) == cert
    space, fams = crossing_lines()
    for out in (weak_colorful_run(space, fams, 2, 4),
                weak_colorful_run(make_box_space(1, 3), [[[0, 1], [1]], [[1, 2], [1]]], 2, 3),
                weak_colorful_run(space, [[[0]], [[0]]], 2, 4)):
        rec = io.colorful_to_record(out)
        _both_ways(rec)
        assert io.colorful_from_record(rec) == out


def test_rationals():
    assert io.unrat(io.rat(Fraction(-6, 4))) == Fraction(-3, 2)


# ---- schema rejections ---------------------------------------------------

@pytest.mark.parametrize("rec", [
    {"schema": "space", "version": 1, "kind": "box", "dim": 2},
    {"schema": "space", "version": 2, "kind": "box", "dim": 2, "side": 3},
    {"schema": "space", "version": 1, "kind": "explicit", "ground_size": 3, "sets": [[0, 7]]},
    {"schema": "family", "version": 1, "ground_size": 2, "sets": [[-1]]},
    {"schema": "nope", "version": 1},
    [1, 2],
])
def test_bad_records_are_parse_errors(rec):
    with pytest.raises(ParseError):
        if isinstance(rec, dict) and rec.get("schema") == "space":
            io.space_from_record(rec)
        elif isinstance(rec, dict) and rec.get("schema") == "family":
            io.family_from_record(rec)
        else:
            io.validate(rec)


def test_loads_rejects_garbage():
    for text in ("", "not json", "a\tb\tc", '{"schema": "family"'):
        with pytest.raises(ParseError):
            io.loads(text)


# ---- CLI -----------------------------------------------------------------

def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_invariants_box(capsys):
    code, out, _ = _run(capsys, "invariants", "--space", "box:2:3", "--all", "--format", "structured")
    rec = json.loads(out)
    assert code == 0
    assert (rec["radon"], rec["helly_independence"], rec["helly_direct"], rec["separable"]) == (4, 2, 2, True)


def test_cli_fh_lower_bound(capsys):
    code, out, _ = _run(capsys, "fh", "--family", "lower-bound:2:6", "--k", "2", "--format", "structured")
    rec = io.fh_from_record(io.loads(out))
    assert code == 0 and rec.alpha == Fraction(9, 15) and rec.beta == Fraction(2, 6)


def test_cli_bk_triangle_writes_file(capsys, tmp_path):
    dest = tmp_path / "emb.txt"
    code, out, _ = _run(capsys, "bk-embed", "--input", str(DATA / "triangle.sets"), "--format", "delimited",
                        "--out", str(dest))
    assert code == 0 and out == ""
    rec = io.read_record(dest)
    assert rec["nerve_isomorphic"] is True


@pytest.mark.parametrize("argv,code", [
    (["invariants", "--space", "box:2:5"], 3),
    (["invariants", "--space", "box:2:5", "--cap", "25"], 0),
    (["invariants", "--space", "/no/such/file"], 2),
    (["invariants", "--space", "hexagon:2:3"], 2),
    (["invariants"], 2),
    (["bogus"], 2),
    (["fh", "--family", "lower-bound:2:5", "--k", "2"], 2),
    (["fh", "--family", "lower-bound:2:6", "--k", "9"], 2),
    (["space", "--space", "box:1:3", "--cap", "0"], 2),
    (["space", "--space", str(DATA / "corrupted.space.json")], 4),
    (["space", "--space", str(DATA / "two-arcs.space.json"), "--all"], 0),
])
def test_cli_exit_codes(capsys, argv, code):
    assert _run(capsys, *argv)[0] == code


def test_cli_hypothesis_violation(capsys, tmp_path):
    bad = tmp_path / "meet.json"
    # the hulls of the two images share point 2
    bad.write_text(json.dumps({"schema": "lemma31-input", "version": 1, "space": "box:1:5",
                               "functions": [[0, 2], [2, 4]], "r": 3}))
    code, _, err = _run(capsys, "lemma31", "--input", str(bad))
    assert code == 4 and "hulls intersect" in err
    not_convex = tmp_path / "nc.json"
    not_convex.write_text(json.dumps({"schema": "colorful-input", "version": 1, "space": "box:1:3",
                                      "families": [[[0, 2]], [[1]]], "m": 2, "r": 3}))
    assert _run(capsys, "colorful", "--input", str(not_convex))[0] == 4


def test_cli_verification_failure(capsys, monkeypatch):
    import convspace.cli as cli
    monkeypatch.setattr(cli, "verify_separated_pair", lambda *a: ["forged"])
    code, _, err = _run(capsys, "lemma31", "--input", str(DATA / "lemma31-chain.json"))
    assert code == 5 and "forged" in err


def test_cli_missing_parameter(capsys, tmp_path):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"schema": "colorful-input", "version": 1, "space": "box:2:3",
                             "families": [[[0]], [[0]]]}))
    assert _run(capsys, "colorful", "--input", str(f))[0] == 2
    assert _run(capsys, "colorful", "--input", str(f), "--m", "2", "--r", "4")[0] == 0


def test_cli_selftest_fixture_failure(capsys):
    code, out, _ = _run(capsys, "selftest", "--space", str(DATA / "corrupted.space.json"), "--format", "structured")
    rec = json.loads(out)
    assert code == 5 and not rec["passed"]
    failed = [c for c in rec["checks"] if not c["passed"]]
    assert [c["name"] for c in failed] == ["check_axioms[fixtures]"]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_cli_selftest_passes_at_several_seeds(capsys, seed):
    code, out, _ = _run(capsys, "selftest", "--seed", str(seed), "--format", "structured")
    rec = json.loads(out)
    assert code == 0 and rec["passed"] and rec["seed"] == seed


GOLDEN_RUNS = {
    "invariants-box-2-3.jsonl": ["invariants", "--space", "box:2:3", "--all"],
    "fh-lower-bound-2-6.jsonl": ["fh", "--family", "lower-bound:2:6", "--k", "2"],
    "bk-triangle.jsonl": ["bk-embed", "--input", str(DATA / "triangle.sets")],
    "colorful-crossing.jsonl": ["colorful", "--input", str(DATA / "colorful-crossing.json")],
    "colorful-shared.jsonl": ["colorful", "--input", str(DATA / "colorful-shared.json")],
    "lemma31-chain.jsonl": ["lemma31", "--input", str(DATA / "lemma31-chain.json")],
    "space-two-arcs.jsonl": ["space", "--space", str(DATA / "two-arcs.space.json")],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_outputs(capsys, name):
    code, out, _ = _run(capsys, *GOLDEN_RUNS[name], "--format", "structured")
    assert code == 0
    assert io.loads(out) == io.read_record(GOLDEN / name)


def test_demo_data_files_parse():
    for path in sorted(DATA.iterdir()):
        rec = io.read_record(path)
        io.validate(rec)


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_scripts_run(script):
    import subprocess
    import sys
    done = subprocess.run([sys.executable, str(DEMOS / script)], capture_output=True, text=True, timeout=120)
    assert done.returncode == 0, done.stderr
    assert done.stdout
