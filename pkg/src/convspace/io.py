"""Versioned records for spaces, families, reports and certificates.

Every record is a JSON object carrying ``schema`` and ``version`` keys
and is validated against a JSON Schema on the way in and on the way out.
Three renderings exist: ``structured`` (one JSON object per line),
``delimited`` (``key<TAB>json-value`` lines) and ``human``. The first
two parse back to the same record.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .bk import BKEmbedding, Certificate, Inequality
from .builtins import box_lower_bound_family, make_box_space, make_explicit_space, make_lattice_space
from .colorful.lemmas import Inconclusive, SeparatedPairCertificate
from .colorful.pipeline import MTupleWitness, VennCertificate, VennRow
from .errors import ParseError
from .family import SetFamily
from .fractional import FHReport
from .invariants import BoundCheck, InvariantReport
from .pointset import PointSet
from .space import DEFAULT_CAP, ConvexitySpace, Halfspace

VERSION = 1
FORMATS = ("human", "structured", "delimited")

_SHORTHAND = re.compile(r"^(box|lattice):(\d+):(\d+)$")
_LOWER_BOUND = re.compile(r"^lower-bound:(\d+):(\d+)$")

_nat = {"type": "integer", "minimum": 0}
_index_list = {"type": "array", "items": _nat}
_rational = {
    "type": "object",
    "properties": {"num": {"type": "integer"}, "den": {"type": "integer", "minimum": 1}},
    "required": ["num", "den"],
    "additionalProperties": False,
}
_halfspace = {
    "type": "object",
    "properties": {"gamma": _index_list, "complement": _index_list},
    "required": ["gamma", "complement"],
}


def _record(name: str, props: dict, required: list[str]) -> dict:
    return {
        "type": "object",
        "properties": {"schema": {"const": name}, "version": {"const": VERSION}, **props},
        "required": ["schema", "version", *required],
    }


_space_props = {
    "kind": {"enum": ["box", "lattice", "explicit"]},
    "dim": {"type": "integer", "minimum": 1},
    "side": {"type": "integer", "minimum": 2},
    "ground_size": {"type": "integer", "minimum": 1},
    "sets": {"type": "array", "items": _index_list},
    "labels": {"type": ["array", "null"], "items": {"type": ["string", "null"]}},
    "closed": {"type": "boolean"},
}
_space_schema = _record("space", _space_props, ["kind"])
_space_schema["allOf"] = [
    {"if": {"properties": {"kind": {"enum": ["box", "lattice"]}}},
     "then": {"required": ["dim", "side"]},
     "else": {"required": ["ground_size", "sets"]}},
]
_space_ref = {"oneOf": [{"type": "string"}, {"type": "object"}]}

SCHEMAS: dict[str, dict] = {
    "space": _space_schema,
    "family": _record("family", {"ground_size": _nat, "sets": {"type": "array", "items": _index_list}},
                      ["ground_size", "sets"]),
    "fh": _record("fh", {
        "n": _nat, "k": _nat, "intersecting_k_tuples": _nat, "total_k_tuples": _nat,
        "alpha": _rational, "max_intersecting": _nat, "beta": _rational,
        "witness_point": {"type": ["integer", "null"]}, "members": _index_list,
    }, ["n", "k", "intersecting_k_tuples", "alpha", "max_intersecting", "beta"]),
    "invariants": _record("invariants", {
        "space": {"type": "object"},
        "radon": {"type": ["integer", "null"]},
        "helly_independence": _nat,
        "helly_direct": {"type": ["integer", "null"]},
        "vc_halfspaces": _nat,
        "dual_vc_halfspaces": _nat,
        "separable": {"type": "boolean"},
        "separability_witness": {"type": ["array", "null"]},
        "bounds": {"type": "array", "items": {
            "type": "object",
            "properties": {"name": {"type": "string"}, "holds": {"type": ["boolean", "null"]},
                           "data": {"type": "object"}},
            "required": ["name", "holds"],
        }},
    }, ["radon", "helly_independence", "vc_halfspaces", "dual_vc_halfspaces", "separable", "bounds"]),
    "bk": _record("bk", {
        "atom_points": {"type": "array", "items": _rational},
        "atoms": {"type": "array", "items": _index_list},
        "sets": {"type": "array", "items": _index_list},
        "certificates": {"type": "array", "items": {
            "type": "object",
            "properties": {
                "points": {"type": "array", "items": _rational},
                "realized_by": _index_list,
                "inequalities": {"type": "array", "items": {"type": "array", "items": {
                    "type": "array", "prefixItems": [_nat, _nat, _rational], "minItems": 3, "maxItems": 3}}},
            },
            "required": ["points", "realized_by", "inequalities"],
        }},
        "nerve_isomorphic": {"type": "boolean"},
    }, ["atom_points", "atoms", "sets", "certificates"]),
    "lemma31-input": _record("lemma31-input", {
        "space": _space_ref,
        "functions": {"type": "array", "minItems": 2,
                      "items": {"oneOf": [_index_list, {"type": "object", "additionalProperties": _nat}]}},
        "r": {"type": "integer", "minimum": 3},
    }, ["space", "functions"]),
    "lemma31": _record("lemma31", {
        "E0": {"type": "array"}, "i": _nat, "j": _nat, "gamma": _halfspace, "x0": _nat,
        "N": _nat, "r": _nat, "gamma_weights": _index_list, "complement_weights": _index_list,
    }, ["E0", "i", "j", "gamma", "x0", "N", "r"]),
    "colorful-input": _record("colorful-input", {
        "space": _space_ref,
        "families": {"type": "array", "items": {"type": "array", "items": _index_list}},
        "m": {"type": "integer", "minimum": 2},
        "r": {"type": "integer", "minimum": 3},
    }, ["space", "families"]),
    "colorful": _record("colorful", {
        "outcome": {"enum": ["m-tuple", "venn", "inconclusive"]},
        "family": _nat, "members": _index_list, "point": _nat,
        "halfspaces": {"type": "array", "items": _halfspace},
        "pairs": {"type": "array", "items": _index_list},
        "rows": {"type": "array", "items": {"type": "object"}},
        "stage": {"type": "string"}, "reason": {"type": "string"},
    }, ["outcome"]),
    "selftest": _record("selftest", {
        "seed": _nat, "passed": {"type": "boolean"},
        "checks": {"type": "array", "items": {"type": "object"}},
    }, ["seed", "passed", "checks"]),
}


def validate(record: dict, name: str | None = None) -> dict:
    """Check a record against its schema; raise :class:`ParseError` on mismatch."""
    if not isinstance(record, dict):
        raise ParseError("a record must be a JSON object")
    name = name or record.get("schema")
    if name not in SCHEMAS:
        raise ParseError(f"unknown record schema {name!r}")
    try:
        jsonschema.validate(record, SCHEMAS[name])
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"{name} record invalid at {path}: {exc.message}") from None
    return record


# ---- rationals -----------------------------------------------------------

def rat(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def unrat(d: dict) -> Fraction:
    return Fraction(d["num"], d["den"])


# ---- spaces and families -------------------------------------------------

def space_to_record(space: ConvexitySpace) -> dict:
    if space.kind in ("box", "lattice"):
        rec = {"kind": space.kind, "dim": space.params["dim"], "side": space.params["side"]}
    elif space.kind == "explicit":
        labels = [g.label for g in space.ground]
        rec = {
            "kind": "explicit",
            "ground_size": space.n,
            "sets": [PointSet.from_mask(m).to_list() for m in space.family],
            "closed": bool(space.params.get("closed", True)),
            "labels": labels if any(lab is not None for lab in labels) else None,
        }
    else:
        raise ParseError(f"spaces of kind {space.kind!r} have no file form")
    return validate({"schema": "space", "version": VERSION, **rec})


def space_from_record(rec: dict, cap: int = DEFAULT_CAP) -> ConvexitySpace:
    rec = validate(rec, "space")
    kind = rec["kind"]
    try:
        if kind == "box":
            return make_box_space(rec["dim"], rec["side"], cap)
        if kind == "lattice":
            return make_lattice_space(rec["dim"], rec["side"], cap)
        fam = SetFamily(rec["ground_size"], rec["sets"])
        return make_explicit_space(fam, close=rec.get("closed", True), labels=rec.get("labels"), cap=cap)
    except ValueError as exc:
        raise ParseError(f"space record rejected: {exc}") from None


def parse_space(spec, cap: int = DEFAULT_CAP) -> ConvexitySpace:
    """A space from shorthand ``kind:dim:side``, a record dict, or a file path."""
    if isinstance(spec, dict):
        return space_from_record(spec, cap)
    text = str(spec).strip()
    m = _SHORTHAND.match(text)
    if m:
        kind, d, side = m.group(1), int(m.group(2)), int(m.group(3))
        return space_from_record({"schema": "space", "version": VERSION, "kind": kind, "dim": d, "side": side},
                                 cap)
    return space_from_record(read_record(text), cap)


def family_to_record(F: SetFamily) -> dict:
    return validate({"schema": "family", "version": VERSION, "ground_size": F.ground_size, "sets": F.to_lists()})


def family_from_record(rec: dict) -> SetFamily:
    rec = validate(rec, "family")
    try:
        return SetFamily(rec["ground_size"], rec["sets"])
    except ValueError as exc:
        raise ParseError(f"family record rejected: {exc}") from None


def parse_family(spec) -> SetFamily:
    """A family from ``lower-bound:d:n``, a record dict, or a file path."""
    if isinstance(spec, dict):
        return family_from_record(spec)
    text = str(spec).strip()
    m = _LOWER_BOUND.match(text)
    if m:
        try:
            return box_lower_bound_family(int(m.group(1)), int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return family_from_record(read_record(text))


# ---- reports -------------------------------------------------------------

def fh_to_record(rep: FHReport) -> dict:
    from math import comb
    return validate({
        "schema": "fh", "version": VERSION, "n": rep.n, "k": rep.k,
        "intersecting_k_tuples": rep.intersecting_k_tuples, "total_k_tuples": comb(rep.n, rep.k),
        "alpha": rat(rep.alpha), "max_intersecting": rep.max_intersecting, "beta": rat(rep.beta),
        "witness_point": rep.witness_point, "members": list(rep.members),
    })


def fh_from_record(rec: dict) -> FHReport:
    rec = validate(rec, "fh")
    return FHReport(rec["n"], rec["k"], rec["intersecting_k_tuples"], unrat(rec["alpha"]),
                    rec["max_intersecting"], unrat(rec["beta"]), rec.get("witness_point"),
                    list(rec.get("members", [])))


def invariants_to_record(rep: InvariantReport, space: ConvexitySpace | None = None) -> dict:
    w = rep.separability_witness
    rec = {
        "schema": "invariants", "version": VERSION,
        "radon": rep.radon, "helly_independence": rep.helly_independence, "helly_direct": rep.helly_direct,
        "vc_halfspaces": rep.vc_halfspaces, "dual_vc_halfspaces": rep.dual_vc_halfspaces,
        "separable": rep.separable,
        "separability_witness": None if w is None else [w[0].to_list(), w[1]],
        "bounds": [{"name": b.name, "holds": b.holds, "data": dict(b.data)} for b in rep.bound_checks],
    }
    if space is not None:
        rec["space"] = space_to_record(space)
    return validate(rec)


def invariants_from_record(rec: dict) -> InvariantReport:
    rec = validate(rec, "invariants")
    w = rec.get("separability_witness")
    return InvariantReport(
        rec["radon"], rec["helly_independence"], rec.get("helly_direct"), rec["vc_halfspaces"],
        rec["dual_vc_halfspaces"], rec["separable"],
        [BoundCheck(b["name"], b["holds"], dict(b.get("data", {}))) for b in rec["bounds"]],
        None if w is None else (PointSet(w[0]), w[1]),
    )


def bk_to_record(emb: BKEmbedding, nerve_isomorphic: bool | None = None) -> dict:
    index = {a: j for j, a in enumerate(emb.atom_points)}
    rec = {
        "schema": "bk", "version": VERSION,
        "atom_points": [rat(a) for a in emb.atom_points],
        "atoms": [a.to_list() for a in emb.atoms],
        "sets": [sorted(index[a] for a in c) for c in emb.sets],
        "certificates": [
            {
                "points": [rat(p) for p in c.points],
                "realized_by": list(c.realized_by),
                "inequalities": [[[i, j, rat(q)] for i, j, q in ineq.terms] for ineq in c.inequalities],
            }
            for c in emb.certificates
        ],
    }
    if nerve_isomorphic is not None:
        rec["nerve_isomorphic"] = nerve_isomorphic
    return validate(rec)


def bk_from_record(rec: dict) -> BKEmbedding:
    rec = validate(rec, "bk")
    pts = [unrat(a) for a in rec["atom_points"]]
    certs = [
        Certificate(
            tuple(unrat(p) for p in c["points"]),
            tuple(Inequality(tuple((i, j, unrat(q)) for i, j, q in ineq)) for ineq in c["inequalities"]),
            tuple(c["realized_by"]),
        )
        for c in rec["certificates"]
    ]
    return BKEmbedding(pts, [PointSet(a) for a in rec["atoms"]],
                       [frozenset(pts[j] for j in s) for s in rec["sets"]], certs)


def _hs(g: Halfspace) -> dict:
    return {"gamma": g.gamma.to_list(), "complement": g.complement.to_list()}


def _unhs(d: dict) -> Halfspace:
    return Halfspace(PointSet(d["gamma"]), PointSet(d["complement"]))


def lemma31_to_record(cert: SeparatedPairCertificate) -> dict:
    return validate({
        "schema": "lemma31", "version": VERSION, "E0": list(cert.E0), "i": cert.i, "j": cert.j,
        "gamma": _hs(cert.gamma), "x0": cert.x0, "N": cert.N, "r": cert.r,
        "gamma_weights": list(cert.gamma_weights), "complement_weights": list(cert.complement_weights),
    })


def lemma31_from_record(rec: dict) -> SeparatedPairCertificate:
    rec = validate(rec, "lemma31")
    return SeparatedPairCertificate(tuple(rec["E0"]), rec["i"], rec["j"], _unhs(rec["gamma"]), rec["x0"],
                                    rec["N"], rec["r"], list(rec.get("gamma_weights", [])),
                                    list(rec.get("complement_weights", [])))


def colorful_to_record(out) -> dict:
    base = {"schema": "colorful", "version": VERSION}
    if isinstance(out, MTupleWitness):
        base |= {"outcome": "m-tuple", "family": out.family, "members": list(out.members), "point": out.point}
    elif isinstance(out, VennCertificate):
        base |= {
            "outcome": "venn",
            "halfspaces": [_hs(g) for g in out.halfspaces],
            "pairs": [list(p) for p in out.pairs],
            "rows": [{"pattern": list(r.pattern), "edge": list(r.edge), "point": r.point} for r in out.rows],
        }
    elif isinstance(out, Inconclusive):
        base |= {"outcome": "inconclusive", "stage": out.stage, "reason": out.reason}
    else:
        raise TypeError(f"not a colorful outcome: {out!r}")
    return validate(base)


def colorful_from_record(rec: dict):
    rec = validate(rec, "colorful")
    kind = rec["outcome"]
    if kind == "m-tuple":
        return MTupleWitness(rec["family"], tuple(rec["members"]), rec["point"])
    if kind == "venn":
        return VennCertificate(
            [_unhs(g) for g in rec["halfspaces"]],
            [tuple(p) for p in rec["pairs"]],
            [VennRow(tuple(r["pattern"]), tuple(r["edge"]), r["point"]) for r in rec["rows"]],
        )
    return Inconclusive(rec["stage"], rec["reason"])


# ---- text forms ----------------------------------------------------------

def read_record(path) -> dict:
    """Load a record from a structured (JSON) or delimited file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def loads(text: str) -> dict:
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty input")
    if stripped.startswith("{"):
        try:
            rec = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg} at line {exc.lineno}") from None
    else:
        rec = {}
        for n, line in enumerate(stripped.splitlines(), 1):
            key, sep, value = line.partition("\t")
            if not sep:
                raise ParseError(f"line {n}: expected key<TAB>value")
            try:
                rec[key] = json.loads(value)
            except json.JSONDecodeError:
                raise ParseError(f"line {n}: value for {key!r} is not JSON") from None
    return validate(rec)


def dumps(record: dict, fmt: str = "structured") -> str:
    validate(record)
    if fmt == "structured":
        return json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n"
    if fmt == "delimited":
        return "".join(f"{k}\t{json.dumps(record[k], sort_keys=True, separators=(',', ':'))}\n"
                       for k in sorted(record))
    if fmt == "human":
        return render_human(record)
    raise ValueError(f"unknown format {fmt!r}")


def _q(d) -> str:
    q = unrat(d)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_human(rec: dict) -> str:
    kind = rec["schema"]
    lines: list[str] = []
    if kind == "fh":
        lines += [
            f"members n = {rec['n']}, k = {rec['k']}",
            f"intersecting k-tuples: {rec['intersecting_k_tuples']} of {rec['total_k_tuples']}",
            f"alpha = {rec['intersecting_k_tuples']}/{rec['total_k_tuples']} = {_q(rec['alpha'])}",
            f"largest intersecting subfamily: {rec['max_intersecting']} (point {rec['witness_point']})",
            f"beta = {rec['max_intersecting']}/{rec['n']} = {_q(rec['beta'])}",
        ]
    elif kind == "invariants":
        names = ["radon", "helly_independence", "helly_direct", "vc_halfspaces", "dual_vc_halfspaces", "separable"]
        lines += [f"{n:<20} {'n/a' if rec.get(n) is None else str(rec[n]).lower()}" for n in names]
        if rec.get("separability_witness"):
            S, x = rec["separability_witness"]
            lines.append(f"not separable: point {x} cannot be split from {S}")
        for b in rec["bounds"]:
            state = {True: "holds", False: "VIOLATED", None: "n/a"}[b["holds"]]
            lines.append(f"bound {b['name']:<18} {state}")
    elif kind == "bk":
        lines.append("atom points: " + ", ".join(_q(a) for a in rec["atom_points"]))
        for i, s in enumerate(rec["sets"]):
            lines.append(f"C_{i} = {{{', '.join(_q(rec['atom_points'][j]) for j in s)}}}")
        lines.append(f"certificates: {len(rec['certificates'])}")
        if "nerve_isomorphic" in rec:
            lines.append(f"nerve check: {'pass' if rec['nerve_isomorphic'] else 'FAIL'}")
    elif kind == "colorful":
        if rec["outcome"] == "m-tuple":
            lines.append(f"family {rec['family']} members {rec['members']} share point {rec['point']}")
        elif rec["outcome"] == "venn":
            for i, g in enumerate(rec["halfspaces"]):
                lines.append(f"halfspace {i}: {g['gamma']} | {g['complement']}  pair {rec['pairs'][i]}")
            for r in rec["rows"]:
                signs = "".join("+" if s else "-" for s in r["pattern"])
                lines.append(f"  {signs}  edge {r['edge']} -> point {r['point']}")
        else:
            lines.append(f"inconclusive at {rec['stage']}: {rec['reason']}")
    elif kind == "space":
        if rec["kind"] == "explicit":
            lines.append(f"explicit space on {rec['ground_size']} points, {len(rec['sets'])} convex sets")
            lines += [f"  {s}" for s in rec["sets"]]
        else:
            lines.append(f"{rec['kind']} space, dim {rec['dim']}, side {rec['side']}")
    elif kind == "family":
        lines.append(f"family of {len(rec['sets'])} sets on {rec['ground_size']} points")
        lines += [f"  S_{i} = {s}" for i, s in enumerate(rec["sets"])]
    elif kind == "selftest":
        for c in rec["checks"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['module']}.{c['name']}"
                         + ("" if c["passed"] else f"  witness: {c.get('witness')}"))
        lines.append(f"selftest seed {rec['seed']}: {'pass' if rec['passed'] else 'FAIL'}")
    else:
        for k in sorted(rec):
            if k not in ("schema", "version"):
                lines.append(f"{k}: {json.dumps(rec[k])}")
    return "\n".join(lines) + "\n"
