"""Command-line interface.

Exit codes: 0 success, 1 hazards / invalid names / failed expectations,
2 usage or parse errors, 3 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .conformance import run_conformance
from .normalizer import NormalizationForm, normalize
from .policy import ALL_POLICIES, parse_targets, stored_form, validate
from .scan import ManifestError, format_text, read_manifest, scan_paths, walk_directory
from .scenario import ScenarioError, parse_scenario, run_scenario
from .text import check_text, decode_name, to_escapes
from .ucd import UcdParseError, ccc_of, get_tables

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3

logger = logging.getLogger("fsnorm")


class UsageError(Exception):
    pass


def _dump_json(data, escape: bool) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=escape)


def _read_input(args, raw: str) -> str:
    if args.literal:
        return check_text(raw)
    return decode_name(raw)


def cmd_normalize(args, tables, out) -> int:
    text = _read_input(args, args.text)
    form = NormalizationForm.parse(args.form)
    result = normalize(tables, text, form)
    print(f"# {form.name}, Unicode {tables.version_string}", file=out)
    print(to_escapes(result) if args.escape else result, file=out)
    for ch in result:
        cp = ord(ch)
        name = tables.names.get(cp)
        line = f"U+{cp:04X}\tccc={ccc_of(tables, cp)}"
        print(f"{line}\t{name}" if name else line, file=out)
    return EXIT_OK


def cmd_check(args, tables, out) -> int:
    name = _read_input(args, args.name)
    if not name:
        raise UsageError("file name must not be empty")
    targets = parse_targets(args.target)
    results = []
    for policy in targets:
        report = validate(policy, name, tables)
        stored = stored_form(policy, name, tables) if report.valid else None
        results.append((policy, report, stored))
    all_valid = all(report.valid for _, report, _ in results)

    if args.format == "json":
        payload = {
            "tool_version": __version__,
            "tables_version": tables.version_string,
            "name": {"text": name, "code_points": to_escapes(name)},
            "valid": all_valid,
            "targets": [
                dict(report.to_dict(), stored_form=None if stored is None else to_escapes(stored))
                for _, report, stored in results
            ],
        }
        print(_dump_json(payload, args.escape), file=out)
    else:
        shown = to_escapes(name) if args.escape else f"{name} ({to_escapes(name)})"
        print(f"# Unicode {tables.version_string}", file=out)
        print(f"name: {shown}", file=out)
        for policy, report, stored in results:
            if report.valid:
                print(f"{policy.label}: valid, stored as {to_escapes(stored)}", file=out)
                continue
            print(f"{policy.label}: invalid", file=out)
            for v in report.violations:
                start, end = v.offending_span
                print(f"    {v.rule_id} [{start}:{end}] {v.detail}", file=out)
    return EXIT_OK if all_valid else EXIT_FINDINGS


def cmd_scan(args, tables, out) -> int:
    if (args.root is None) == (args.manifest is None):
        raise UsageError("give exactly one of ROOT or --manifest FILE")
    targets = parse_targets(args.target)
    if args.manifest is not None:
        with open(args.manifest, encoding="utf-8") as fh:
            paths = read_manifest(fh)
        errors: list[str] = []
    else:
        paths, errors = walk_directory(args.root)
    report = scan_paths(paths, targets, tables)
    report.errors[:0] = errors
    if args.format == "json":
        print(_dump_json(report.to_dict(), args.escape), file=out)
    else:
        print(format_text(report, args.escape), file=out)
    return EXIT_FINDINGS if report.hazards else EXIT_OK


def cmd_simulate(args, tables, out) -> int:
    with open(args.scenario, encoding="utf-8") as fh:
        steps = parse_scenario(fh)
    result = run_scenario(steps, tables)
    if args.format == "json":
        payload = {
            "tool_version": __version__,
            "tables_version": tables.version_string,
            "transcript": result.transcript,
            "failures": result.failures,
            "transfers": [dict(report.to_dict(), volume=vol) for vol, report in result.reports],
        }
        print(_dump_json(payload, args.escape), file=out)
    else:
        for line in result.transcript:
            print(line, file=out)
        for vol, report in result.reports:
            print(f"transfer report for {vol}:", file=out)
            for entry in report.entries:
                data = entry.to_dict()
                names = [data[k]["code_points"] for k in ("source", "stored_as", "existing") if k in data]
                print(f"    {entry.kind}: " + " -> ".join(names), file=out)
            print("    " + ", ".join(f"{k}={v}" for k, v in report.summary.items()), file=out)
        if result.failures:
            print(f"{len(result.failures)} expectation(s) failed:", file=out)
            for failure in result.failures:
                print(f"    {failure}", file=out)
    return EXIT_OK if result.ok else EXIT_FINDINGS


def cmd_conformance(args, tables, out) -> int:
    with open(args.file, encoding="utf-8") as fh:
        result = run_conformance(fh, tables)
    for lineno, problem in result.failures:
        print(f"line {lineno}: {problem}", file=out)
    failing_lines = len({lineno for lineno, _ in result.failures})
    print(
        f"Unicode {tables.version_string}: checked {result.checked} lines, {failing_lines} failing",
        file=out,
    )
    return EXIT_OK if result.ok else EXIT_FINDINGS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsnorm",
        description="Unicode canonical normalization and cross-filesystem filename checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--ucd-dir", metavar="DIR", help="load UnicodeData.txt and CompositionExclusions.txt from DIR")
    parser.add_argument("--escape", action="store_true", help="print names as pure-ASCII U+ lists")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    targets_help = "comma-separated filesystems: windows, macos, linux (default: all)"
    default_targets = ",".join(p.kind.value for p in ALL_POLICIES)

    p = sub.add_parser("normalize", help="normalize text and dump its code points")
    p.add_argument("text", help="UTF-8 text or a U+XXXX escape list")
    p.add_argument("--form", default="nfc", choices=[f.value for f in NormalizationForm])
    p.add_argument("--literal", action="store_true", help="never interpret U+ escapes")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check", help="check one file name against filesystem rules")
    p.add_argument("name", help="UTF-8 name or a U+XXXX escape list")
    p.add_argument("--target", default=default_targets, help=targets_help)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--literal", action="store_true", help="never interpret U+ escapes")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="lint a directory tree or a name manifest")
    p.add_argument("root", nargs="?", help="directory to walk")
    p.add_argument("--manifest", metavar="FILE", help="newline-delimited relative paths instead of a directory")
    p.add_argument("--target", default=default_targets, help=targets_help)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("simulate", help="run a volume scenario file")
    p.add_argument("scenario")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("conformance", help="check NormalizationTest.txt canonical columns")
    p.add_argument("file")
    p.set_defaults(func=cmd_conformance)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if out is None:
        out = sys.stdout
        if hasattr(out, "reconfigure"):
            out.reconfigure(encoding="utf-8")

    try:
        tables = get_tables(args.ucd_dir)
        return args.func(args, tables, out)
    except (UsageError, ScenarioError, ManifestError, UcdParseError, ValueError) as exc:
        print(f"fsnorm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fsnorm {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
