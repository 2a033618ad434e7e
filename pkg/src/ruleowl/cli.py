"""Command-line front end.

Exit status: 0 success, 1 when any ERROR diagnostic was reported,
2 on usage or I/O failure. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import difflib
import sys
from typing import Optional, Sequence

from .diagnostics import Diagnostic, Severity
from .extract import extract_rules
from .ontology import graph_isomorphic
from .parser import parse_lines
from .rules import RuleKind, canonical_form
from .serializer import Format, OntologyParseError, SerializationConfig, parse_subset, serialize
from .transform import Mode, TransformConfig, classify_all, convert

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_IO = 0, 1, 2


class _IOFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _report(diagnostics: Sequence[Diagnostic], quiet: bool) -> int:
    for d in sorted(diagnostics, key=lambda d: (d.line, d.column)):
        if quiet and d.severity is Severity.WARNING:
            continue
        print(d.format(), file=sys.stderr)
    return EXIT_DIAGNOSTICS if any(d.is_error for d in diagnostics) else EXIT_OK


def _convert_file(path: str, mode: Mode):
    rules, diagnostics = parse_lines(_read(path))
    graph, more = convert(rules, TransformConfig(mode))
    return rules, graph, diagnostics + more


def cmd_convert(args: argparse.Namespace) -> int:
    _, graph, diagnostics = _convert_file(args.rules, Mode(args.mode))
    text = serialize(graph, SerializationConfig(Format(args.format)))
    status = _report(diagnostics, args.quiet)
    _write(args.output, text)
    return status


def cmd_extract(args: argparse.Namespace) -> int:
    text = _read(args.ontology)
    try:
        graph = parse_subset(text)
    except OntologyParseError as exc:
        return _report([exc.diagnostic], False)
    lines = [canonical_form(r) + "\n" for r in extract_rules(graph)]
    _write(args.output, "".join(lines))
    return EXIT_OK


def cmd_roundtrip(args: argparse.Namespace) -> int:
    rules, first, diagnostics = _convert_file(args.rules, Mode.ADMINISTRATIVE)
    status = _report(diagnostics, args.quiet)
    extracted = extract_rules(first)
    second, more = convert(extracted)
    status = max(status, _report(more, args.quiet))
    out = []
    classified, _ = classify_all(rules)
    bare = sum(r.kind is RuleKind.BARE_SUBSUMPTION for r in classified)
    if graph_isomorphic(first, second):
        out.append("PASS: rules -> ontology -> rules -> ontology gives the same graph")
    else:
        status = EXIT_DIAGNOSTICS
        out.append("FAIL: re-converted graph differs")
        out += [
            line.rstrip("\n")
            for line in difflib.unified_diff(first.describe(), second.describe(), "first", "second", lineterm="")
        ]
    if bare:
        out.append(f"NOTE: {bare} subsumption rule(s) come back in part_of form (same subClassOf link)")
    out.append(f"{len(rules)} rule(s) in, {len(extracted)} rule(s) extracted")
    print("\n".join(out))
    return status


def cmd_validate(args: argparse.Namespace) -> int:
    rules, diagnostics = parse_lines(_read(args.rules))
    classified, more = classify_all(rules)
    for r in classified:
        print(f"{r.line}\t{r.kind.value}\t{canonical_form(r)}")
    return _report(diagnostics + more, args.quiet)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ruleowl", description="Convert IF/THEN rules to OWL and back.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="rules file -> OWL ontology")
    c.add_argument("rules", help="rule file, or - for stdin")
    c.add_argument("-o", "--output", help="output file (default stdout)")
    c.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.ADMINISTRATIVE.value)
    c.add_argument("--format", choices=[f.value for f in Format], default=Format.RDFXML.value)
    c.add_argument("--quiet", action="store_true", help="suppress warnings")
    c.set_defaults(func=cmd_convert)

    e = sub.add_parser("extract", help="generated RDF/XML ontology -> canonical rules")
    e.add_argument("ontology", help=".owl file, or - for stdin")
    e.add_argument("-o", "--output", help="output file (default stdout)")
    e.set_defaults(func=cmd_extract)

    r = sub.add_parser("roundtrip", help="check convert -> extract -> convert reproduces the graph")
    r.add_argument("rules", help="rule file, or - for stdin")
    r.add_argument("--quiet", action="store_true", help="suppress warnings")
    r.set_defaults(func=cmd_roundtrip)

    v = sub.add_parser("validate", help="parse and classify rules without converting")
    v.add_argument("rules", help="rule file, or - for stdin")
    v.add_argument("--quiet", action="store_true", help="suppress warnings")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
