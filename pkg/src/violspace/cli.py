"""Command-line entry point.

Exit codes: 0 when everything requested holds, 1 on a mathematical violation
(the witness is printed), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .axioms import Axiom, classify
from .core import GroundSet, OperatorFormatError, OperatorTable, load_operator_file, save_operator
from .duality import as_tau
from .enumeration import EXAMPLE_IDS, THEOREM_IDS, census, paper_example, run_theorem_sweep
from .generators import ExtremeDef, extreme_points, find_two_bases, generators_of
from .hypercube import (
    InvalidPartitionError,
    NonIntervalWitness,
    _as_interval,
    equivalence_classes,
    load_partition,
    operator_from_partition,
)
from .miniball import load_points, materialize, smallest_enclosing_ball

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, human: str, structured: dict) -> None:
    if args.quiet:
        return
    if args.format == "structured":
        print(json.dumps(structured, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(human)


def _load(path: str) -> OperatorTable:
    try:
        return load_operator_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _parse_set(ground: GroundSet, text: str) -> int:
    labels = [s.strip() for s in text.split(",") if s.strip()]
    return ground.mask(labels)


def _write(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.write(data.decode("utf-8"))
    else:
        Path(path).write_bytes(data)


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    op = _load(args.path)
    report = classify(op)
    if args.axioms:
        try:
            wanted = [Axiom(a.strip().lower()) for a in args.axioms.split(",") if a.strip()]
        except ValueError as exc:
            raise UsageError(f"{exc}; known axioms: {', '.join(a.value for a in Axiom)}") from None
    else:
        # default: the axioms stated for the file's own presentation
        wanted = [a for a in Axiom if a.kind is op.kind]
    g = op.ground
    lines = [f"{args.path}: {op.kind.value} operator on {g.fmt(g.full)}"]
    for a in wanted:
        w = report.witnesses.get(a)
        lines.append(f"  {a.value:<14}{'pass' if w is None else 'FAIL  ' + w.describe(g)}")
    named = [name.replace("_", " ") for name, on in report.classes.items() if on]
    lines.append("classes: " + (", ".join(named) or "none"))
    structured = report.to_dict()
    structured["requested"] = [a.value for a in wanted]
    _emit(args, "\n".join(lines), structured)
    return OK if all(report.flags[a] for a in wanted) else VIOLATION


def cmd_bases(args) -> int:
    op = as_tau(_load(args.path))
    x = _parse_set(op.ground, args.set)
    fam = generators_of(op, x, within=args.within)
    g = op.ground
    human = "\n".join([
        f"set: {g.fmt(x)}   τ = {g.fmt(fam.closure_value)}",
        "generators: " + ", ".join(g.fmt(y) for y in fam.generators),
        "bases: " + ", ".join(g.fmt(b) for b in fam.bases),
    ])
    _emit(args, human, fam.to_dict(g))
    return OK


def cmd_extreme(args) -> int:
    op = as_tau(_load(args.path))
    x = _parse_set(op.ground, args.set)
    ext = extreme_points(op, x)
    g = op.ground
    chosen = ext.get(ExtremeDef(args.definition))
    human = f"{args.definition}({g.fmt(x)}) = {g.fmt(chosen)}"
    _emit(args, human, {"set": g.labels_of(x), "definition": args.definition,
                        "extreme": g.labels_of(chosen),
                        "ex": g.labels_of(ext.ex), "EX": g.labels_of(ext.EX)})
    return OK


def cmd_partition(args) -> int:
    op = as_tau(_load(args.path))
    g = op.ground
    lines, rows, bad = [], [], False
    for value, members in equivalence_classes(op):
        iv = _as_interval(members)
        bad |= iv is None
        shape = f"interval [{g.fmt(iv.lower)},{g.fmt(iv.upper)}]" if iv else "NOT an interval"
        lines.append(f"τ = {g.fmt(value)}: {' '.join(g.fmt(m) for m in members)}  -> {shape}")
        rows.append({
            "value": g.labels_of(value),
            "members": [g.labels_of(m) for m in members],
            "interval": {"lower": g.labels_of(iv.lower), "upper": g.labels_of(iv.upper)} if iv else None,
        })
        if iv is None:
            lines.append("  " + NonIntervalWitness(value).describe(g))
    _emit(args, "\n".join(lines), {"classes": rows, "hypercube_partition": not bad})
    return VIOLATION if bad else OK


def cmd_from_partition(args) -> int:
    try:
        with open(args.path, "rb") as fh:
            part = load_partition(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror or exc}") from None
    try:
        op = operator_from_partition(part)
    except InvalidPartitionError as exc:
        print(f"invalid partition: {exc}", file=sys.stderr)
        return VIOLATION
    report = classify(op)
    two = find_two_bases(op)
    if not report.violator_space or two is not None:
        print("constructed operator is not a uniquely generated violator space", file=sys.stderr)
        return VIOLATION
    _write(args.output, save_operator(op))
    return OK


def cmd_enumerate(args) -> int:
    if args.n > 3:
        raise UsageError("exhaustive enumeration supports -n up to 3")
    if args.census:
        counts = census(args.n)
        human = "\n".join(f"{k:<15}{v}" for k, v in counts.items())
        _emit(args, human, {"n": args.n, "census": counts})
        return OK
    if args.theorem not in THEOREM_IDS:
        raise UsageError(f"unknown theorem id {args.theorem!r}; known: {', '.join(THEOREM_IDS)}")
    report = run_theorem_sweep(args.n, args.theorem)
    lines = [report.summary()]
    if report.violations:
        lines.append("first witness: " + report.violations[0][1].describe(report.ground))
    if not report.expected_to_hold:
        lines.append("(non-implication: counterexamples are expected)")
    _emit(args, "\n".join(lines), report.to_dict())
    return OK if report.ok else VIOLATION


def cmd_miniball(args) -> int:
    try:
        with open(args.path, "rb") as fh:
            config = load_points(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror or exc}") from None
    if args.materialize:
        _write(args.output, save_operator(materialize(config)))
        return OK
    ball = smallest_enclosing_ball(config.points)
    center = [str(c) for c in ball.center]
    _emit(args, f"center ({', '.join(center)})  radius² {ball.radius_sq}",
          {"center": center, "radius_sq": str(ball.radius_sq)})
    return OK


def cmd_examples(args) -> int:
    if args.id is None:
        _emit(args, "\n".join(EXAMPLE_IDS), {"examples": list(EXAMPLE_IDS)})
        return OK
    try:
        op = paper_example(args.id)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, save_operator(op))
    return OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="violspace",
        description="Check violator, closure and convex space axioms on explicit operator tables.",
    )
    parser.add_argument("--format", choices=("human", "structured"), default="human")
    parser.add_argument("--quiet", action="store_true")
    # repeated on each subcommand; SUPPRESS keeps a flag given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check axioms and classify an operator file")
    p.add_argument("path")
    p.add_argument("--axioms", help="comma-separated subset, e.g. c1,c22 (default: the axioms of the file's kind)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bases", parents=[common], help="generators and bases of a set")
    p.add_argument("path")
    p.add_argument("--set", required=True, help="comma-separated labels, empty for ∅")
    p.add_argument("--within", action="store_true", help="only generators contained in the set")
    p.set_defaults(func=cmd_bases)

    p = sub.add_parser("extreme", parents=[common], help="extreme points of a set")
    p.add_argument("path")
    p.add_argument("--set", required=True)
    p.add_argument("--def", dest="definition", choices=("ex", "EX"), default="ex")
    p.set_defaults(func=cmd_extreme)

    p = sub.add_parser("partition", parents=[common], help="equivalence classes and interval test")
    p.add_argument("path")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("from-partition", parents=[common], help="operator from an interval partition")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_from_partition)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive sweeps on n <= 3")
    p.add_argument("-n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--theorem")
    group.add_argument("--census", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("miniball", parents=[common], help="smallest enclosing ball of a point file")
    p.add_argument("path")
    p.add_argument("--materialize", action="store_true", help="write the violator table")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_miniball)

    p = sub.add_parser("examples", parents=[common], help="write a canned example table")
    p.add_argument("--id", choices=EXAMPLE_IDS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (UsageError, OperatorFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
