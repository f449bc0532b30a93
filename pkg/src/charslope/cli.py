"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 validation or
precondition failure, 3 missing or malformed geometry, 4 boundary
warning under --strict.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds, expr, geometry, tree
from .errors import (AnnotationError, CharslopeError, DbFormatError,
                     KnotSyntaxError, MissingGeometryError, PreconditionError,
                     ValidationError)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_GEOMETRY = 3
EXIT_BOUNDARY = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    top = _Parser(prog="charslope",
                  description="Characterising-slope denominator bounds "
                              "from satellite descriptions of knots.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--db", metavar="PATH",
                       help="geometry database file (default: bundled)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")
        p.add_argument("--strict", action="store_true",
                       help="treat floor-boundary warnings as errors")

    p = sub.add_parser("compute", help="bound for a knot expression")
    p.add_argument("expr", help="knot expression, or @FILE for a .knot file")
    common(p)

    p = sub.add_parser("refined", help="winding-zero refined bound")
    p.add_argument("expr")
    p.add_argument("--annotations", metavar="PATH", required=True,
                   help="splice annotation file (JSON)")
    common(p)

    p = sub.add_parser("surgery", help="JSJ form of the surgered manifold")
    p.add_argument("expr")
    p.add_argument("slope", help='surgery slope "p/q"')
    common(p)

    p = sub.add_parser("db", help="inspect the geometry database")
    p.add_argument("action", choices=["list", "show", "verify"])
    p.add_argument("name", nargs="?", help="entry name (for show)")
    common(p)
    return top


def _load_db(args):
    if getattr(args, "db", None):
        return geometry.load_db(args.db)
    return geometry.bundled_db()


def _parse_expr(text):
    if text.startswith("@"):
        return expr.load_knot_file(text[1:])
    return expr.parse(text)


def _report_dict(report, witnesses=None):
    doc = {
        "case": report.case_tag,
        "C": report.C,
        "Q": report.Q,
        "R": report.R,
        "S": report.S,
        "T": report.T,
        "per_piece": [
            {"path": list(p.path), "q": p.q, "r": p.r, "s": p.s}
            for p in report.per_piece
        ],
        "warnings": list(report.warnings),
    }
    if witnesses is not None:
        doc["witnesses"] = [str(w) for w in witnesses]
    return doc


def _print_report(report, as_json, witnesses=None):
    if as_json:
        print(json.dumps(_report_dict(report, witnesses)))
        return
    print("case: %s" % report.case_tag)
    print("C = %d" % report.C)
    for label in ("Q", "R", "S", "T"):
        value = getattr(report, label)
        if value is not None:
            print("%s = %d" % (label, value))
    for p in report.per_piece:
        cells = " ".join("%s=%d" % (k, v) for k, v in
                         (("q", p.q), ("r", p.r), ("s", p.s)) if v is not None)
        print("piece %s: %s" % (list(p.path), cells))
    for w in report.warnings:
        print("warning: %s" % w)
    if witnesses:
        print("witnesses: %s" % " ".join(str(s) for s in witnesses))


def _finish(report, args, witnesses=None):
    _print_report(report, args.json, witnesses)
    if args.strict and report.warnings:
        print("boundary warnings present under --strict", file=sys.stderr)
        return EXIT_BOUNDARY
    return EXIT_OK


def cmd_compute(args):
    knot = _parse_expr(args.expr)
    violations = tree.validate(knot)
    if violations:
        raise ValidationError(violations)
    db = _load_db(args)
    report = bounds.bound(knot, db)
    return _finish(report, args)


def _load_annotations(path):
    with open(path, "rb") as fh:
        try:
            doc = json.loads(fh.read().decode("utf-8"))
        except json.JSONDecodeError as exc:
            raise AnnotationError("annotation file is not valid JSON: %s" % exc)
    if not isinstance(doc, dict) or not isinstance(doc.get("annotations"), list):
        raise AnnotationError(
            'annotation file must be {"complete": bool, "annotations": [...]}')
    complete = bool(doc.get("complete", False))
    out = []
    kinds = {
        "twist": lambda e: bounds.TwistCoefficient(int(e["t"])),
        "signature": lambda e: bounds.SignatureObstruction(int(e["sigma"])),
        "composite_or_fibred": lambda e: bounds.CompositeOrFibred(),
        "pattern_knotted": lambda e: bounds.PatternKnotted(),
        "not_splicifiable": lambda e: bounds.NotSplicifiable(),
    }
    for raw in doc["annotations"]:
        try:
            torus = tree.TorusId(tuple(int(i) for i in raw["torus"]))
            evidence = kinds[raw["evidence"]["kind"]](raw["evidence"])
        except (KeyError, TypeError, ValueError) as exc:
            raise AnnotationError("bad annotation entry %r: %s" % (raw, exc))
        out.append(bounds.SpliceAnnotation(torus, evidence))
    return out, complete


def cmd_refined(args):
    knot = _parse_expr(args.expr)
    violations = tree.validate(knot)
    if violations:
        raise ValidationError(violations)
    db = _load_db(args)
    annotations, complete = _load_annotations(args.annotations)
    report = bounds.refined_bound(knot, db, annotations, complete=complete)
    witnesses = bounds.noncharacterising_witnesses(knot, db, annotations)
    return _finish(report, args, witnesses)


def cmd_surgery(args):
    knot = _parse_expr(args.expr)
    violations = tree.validate(knot)
    if violations:
        raise ValidationError(violations)
    try:
        slope = bounds.Slope.parse(args.slope)
    except ValueError as exc:
        print("charslope: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    if slope.q == 0:
        print("charslope: the trivial slope 1/0 is not accepted", file=sys.stderr)
        return EXIT_VALIDATION
    result = bounds.surgery_jsj(knot, slope)
    if args.json:
        print(json.dumps({
            "case": result.case_tag,
            "surgered_piece_path": list(result.surgered_piece_path),
            "filled_slope": str(result.filled_slope),
            "cable_multiplier": result.cable_multiplier,
        }))
    else:
        print("case: %s" % result.case_tag)
        print("surgered piece: %s" % list(result.surgered_piece_path))
        print("filled slope: %s" % result.filled_slope)
        print("cable multiplier: %d" % result.cable_multiplier)
    return EXIT_OK


def cmd_db(args):
    db = _load_db(args)
    if args.action == "list":
        if args.json:
            print(json.dumps(db.names()))
        else:
            for name in db.names():
                print(name)
        return EXIT_OK
    if args.action == "show":
        if not args.name:
            print("charslope: db show needs an entry name", file=sys.stderr)
            return EXIT_USAGE
        g = db.get(args.name)
        q = geometry.q_frak(g)
        r = geometry.r_frak(g)
        s = geometry.s_frak(g)
        if args.json:
            print(json.dumps({
                "name": g.name, "components": g.components,
                "systole": g.systole,
                "meridian_lengths": list(g.meridian_lengths),
                "linking_numbers": list(g.linking_numbers),
                "source": g.source, "notes": g.notes,
                "q": q.value, "r": r.value, "s": s.value,
            }))
        else:
            print("name: %s" % g.name)
            print("components: %d" % g.components)
            print("systole: %s" % repr(g.systole))
            print("meridian_lengths: %s" % (list(g.meridian_lengths),))
            print("linking_numbers: %s" % (list(g.linking_numbers),))
            print("source: %s" % g.source)
            if g.notes:
                print("notes: %s" % g.notes)
            print("q = %d" % q.value)
            print("r = %d" % r.value)
            print("s = %d" % s.value)
        return EXIT_OK
    # verify
    failures = {}
    for name in db.names():
        probs = geometry.threshold_problems(db.get(name))
        if probs:
            failures[name] = probs
        line = "%s: %s" % (name, "ok" if not probs else "; ".join(probs))
        print(line)
    if failures:
        print("charslope: %d entries failed verification" % len(failures),
              file=sys.stderr)
        return EXIT_GEOMETRY
    return EXIT_OK


_COMMANDS = {
    "compute": cmd_compute,
    "refined": cmd_refined,
    "surgery": cmd_surgery,
    "db": cmd_db,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except KnotSyntaxError as exc:
        print("charslope: syntax error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, PreconditionError) as exc:
        # AnnotationError and WindingError are PreconditionErrors
        print("charslope: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION
    except (MissingGeometryError, DbFormatError) as exc:
        print("charslope: %s" % exc, file=sys.stderr)
        return EXIT_GEOMETRY
    except FileNotFoundError as exc:
        print("charslope: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except CharslopeError as exc:
        print("charslope: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
