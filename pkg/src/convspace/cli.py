"""Command-line front end.

Exit status: 0 success, 2 bad input, 3 enumeration cap exceeded,
4 hypothesis of a procedure violated, 5 internal verification failed.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .bk import bk_embed, check_certificates, verify_nerve_isomorphism
from .colorful import LabeledFunction, large_separated_pairs, verify_outcome, verify_separated_pair, weak_colorful_run
from .errors import CapExceededError, HypothesisViolation, ParseError, VerificationError
from .fractional import fh_report
from .invariants import invariant_report
from .space import DEFAULT_CAP, check_axioms, enumerate_convex_sets, enumerate_halfspaces

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_HYPOTHESIS, EXIT_VERIFY = 0, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=io.FORMATS, default="human")
    common.add_argument("--out", help="write the record here instead of stdout")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest |X| for exhaustive enumeration")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="convspace", description="Finite convexity spaces: invariants, experiments, certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("space", parents=[common], help="describe a space and check its axioms")
    s.add_argument("--space", required=True, help="kind:dim:side or a space file")
    s.add_argument("--all", action="store_true", help="also enumerate convex sets and halfspaces")

    s = sub.add_parser("invariants", parents=[common], help="Radon, Helly, VC and bound checks")
    s.add_argument("--space", required=True)
    s.add_argument("--all", action="store_true", help="force the direct Helly cross-check at any size")

    s = sub.add_parser("fh", parents=[common], help="fractional-Helly counts for a family")
    s.add_argument("--family", required=True, help="lower-bound:d:n or a family file")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("bk-embed", parents=[common], help="embed a set system into quadratic-inequality sets")
    s.add_argument("--family", "--input", dest="family", required=True)

    s = sub.add_parser("colorful", parents=[common], help="run the weak colorful refinement")
    s.add_argument("--input", required=True, help="colorful-input record")
    s.add_argument("--space", help="override the input's space")
    s.add_argument("--m", type=int)
    s.add_argument("--r", type=int)

    s = sub.add_parser("lemma31", parents=[common], help="find a large separated pair")
    s.add_argument("--input", required=True, help="lemma31-input record")
    s.add_argument("--space", help="override the input's space")
    s.add_argument("--r", type=int)

    s = sub.add_parser("selftest", parents=[common], help="run the property suite")
    s.add_argument("--space", action="append", default=[], help="extra space fixture for the axiom checks")
    return p


def _space_of(args, rec=None):
    spec = args.space if getattr(args, "space", None) else rec["space"]
    return io.parse_space(spec, args.cap)


def _pick(flag, rec, key, default=None):
    if flag is not None:
        return flag
    if key in rec:
        return rec[key]
    if default is None:
        raise ParseError(f"--{key} is required (no {key!r} in the input)")
    return default


def _cmd_space(args):
    space = io.parse_space(args.space, args.cap)
    rec = io.space_to_record(space)
    notes = [f"points: {space.n}"]
    status = EXIT_OK
    if space.n <= space.cap:
        report = check_axioms(space, seed=args.seed)
        for c in report.checks:
            notes.append(f"axiom {c.name}: {'pass' if c.passed else 'FAIL'}"
                         + ("" if c.passed else f" (witness {c.witness})"))
        notes.append(f"axiom C3: {report.c3}")
        if not report.ok:
            status = EXIT_HYPOTHESIS
        if args.all:
            notes.append(f"convex sets: {len(enumerate_convex_sets(space))}")
            notes.append(f"halfspaces: {len(enumerate_halfspaces(space))}")
    return rec, notes, status


def _cmd_invariants(args):
    space = io.parse_space(args.space, args.cap)
    space.require_enumerable("invariant computation")
    rep = invariant_report(space, direct=True if args.all else None)
    status = EXIT_VERIFY if rep.violations else EXIT_OK
    return io.invariants_to_record(rep, space), [], status


def _cmd_fh(args):
    F = io.parse_family(args.family)
    try:
        rep = fh_report(F, args.k)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    rep.check(F)
    return io.fh_to_record(rep), [], EXIT_OK


def _cmd_bk(args):
    F = io.parse_family(args.family)
    try:
        emb = bk_embed(F)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    iso = verify_nerve_isomorphism(F, emb.as_family())
    problems = check_certificates(emb)
    notes = [f"certificate problem: {p}" for p in problems]
    status = EXIT_OK if iso and not problems else EXIT_VERIFY
    return io.bk_to_record(emb, iso), notes, status


def _cmd_colorful(args):
    rec = io.read_record(args.input)
    io.validate(rec, "colorful-input")
    space = _space_of(args, rec)
    m, r = _pick(args.m, rec, "m"), _pick(args.r, rec, "r")
    fams = rec["families"]
    for fam in fams:
        for C in fam:
            space.check_mask(sum(1 << x for x in C))
    try:
        out = weak_colorful_run(space, fams, m, r)
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from None
    problems = verify_outcome(space, fams, out, m)
    if problems:
        raise VerificationError("colorful outcome failed re-verification: " + "; ".join(problems), out)
    return io.colorful_to_record(out), [], EXIT_OK


def _cmd_lemma31(args):
    rec = io.read_record(args.input)
    io.validate(rec, "lemma31-input")
    space = _space_of(args, rec)
    r = _pick(args.r, rec, "r")
    fs = [LabeledFunction(f) for f in rec["functions"]]
    try:
        cert = large_separated_pairs(space, fs, r)
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from None
    problems = verify_separated_pair(space, fs, cert, r)
    if problems:
        raise VerificationError("certificate failed re-verification: " + "; ".join(problems), cert)
    return io.lemma31_to_record(cert), [], EXIT_OK


def _cmd_selftest(args):
    from .selftest import run_selftest
    fixtures = [io.parse_space(s, args.cap) for s in args.space]
    res = run_selftest(args.seed, fixtures)
    return res.to_record(), [], EXIT_OK if res.passed else EXIT_VERIFY


COMMANDS = {
    "space": _cmd_space,
    "invariants": _cmd_invariants,
    "fh": _cmd_fh,
    "bk-embed": _cmd_bk,
    "colorful": _cmd_colorful,
    "lemma31": _cmd_lemma31,
    "selftest": _cmd_selftest,
}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    """Parse ``argv``, run one command and return its exit status."""
    try:
        args = build_parser().parse_args(argv)
        if args.cap <= 0:
            raise ParseError("--cap must be positive")
        record, notes, status = COMMANDS[args.command](args)
        text = io.dumps(record, args.format)
        if args.format == "human" and notes:
            text += "\n".join(notes) + "\n"
        _emit(text, args.out)
        return status
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HypothesisViolation as exc:
        print(f"hypothesis violated: {exc}" + (f" (witness {exc.witness})" if exc.witness is not None else ""),
              file=sys.stderr)
        return EXIT_HYPOTHESIS
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())

