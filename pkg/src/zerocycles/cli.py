"""Command-line front end.

Exit codes: 0 on success (or a FiniteDimensional verdict), 1 on a
NotEstablished verdict or a failed internal check, 2 on parse, validation or
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence, TextIO

from .catalog import UnknownFixtureError, get_fixture, list_fixtures
from .configmodel import (
    ConfigError,
    GluingConfiguration,
    connection_warnings,
    counts,
    parse_configuration,
    validate,
)
from .criteria import CriterionReport, Verdict, full_verdict
from .mvcomplex import build_complexes, check_commutativity, dump_matrices

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

SCHEMA_HELP = """\
Configuration file (JSON):
  {
    "name": "...",
    "upstream_components": [{"id": "E1", "label": "..."}, ...],
    "upstream_points": [{"id": "p1", "label": "...", "branches": ["E1", "C2"]}, ...],
    "component_map": {"E1": "Z1", ...},
    "point_blocks": [{"label": "p", "points": ["p1", ...]}, ...],
    "branch_classes": [[["p1", "a"], ...], ...]
  }
Every upstream point has two branches on distinct components; a branch is
[pointId, "a"|"b"] following the order of "branches". Labels are optional.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n\n{SCHEMA_HELP}")
        raise SystemExit(EXIT_ERROR)


class _InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zerocycles", description="Zero-cycle finite-dimensionality checks for glued curve configurations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(p: argparse.ArgumentParser, many: bool = False) -> None:
        p.add_argument("files", nargs="*" if many else "?", metavar="FILE", help="configuration JSON file")
        p.add_argument("--fixture", metavar="NAME", help="use a bundled fixture instead of a file")
        p.add_argument("--format", choices=("text", "json"), default="text")

    add_input(sub.add_parser("validate", help="parse and validate a configuration"))
    add_input(sub.add_parser("counts", help="print n1 n2 n3 m1 m2"))
    check = sub.add_parser("check", help="run the full criterion and print a report")
    add_input(check, many=True)
    check.add_argument("--dump-matrices", action="store_true", help="also write the five complex matrices")
    check.add_argument(
        "--assume-normalization-fd",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="assert CH0 of the normalization is finite dimensional "
        "(default: on for bundled fixtures, off for files)",
    )
    add_input(sub.add_parser("matrices", help="dump the Mayer-Vietoris matrices"))
    fx = sub.add_parser("fixtures", help="list bundled fixtures")
    fx.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _inputs(args: argparse.Namespace, parser: argparse.ArgumentParser) -> list[tuple[str, str | None]]:
    """Resolve to (display name, file path or None for a fixture)."""
    files = args.files if isinstance(args.files, list) else ([args.files] if args.files else [])
    if args.fixture and files:
        parser.error("give either a file or --fixture, not both")
    if args.fixture:
        return [(args.fixture, None)]
    if not files:
        parser.error("a configuration file or --fixture NAME is required")
    return [(f, f) for f in files]


def _load(name: str, path: str | None) -> GluingConfiguration:
    if path is None:
        try:
            return get_fixture(name).config
        except UnknownFixtureError as exc:
            raise _InputError(str(exc)) from None
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_configuration(text)
    except ConfigError as exc:
        raise _InputError(f"{path}: {exc}") from None


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _cmd_validate(config: GluingConfiguration, fmt: str, out: TextIO) -> int:
    violations = validate(config)
    warnings = connection_warnings(config) if not violations else []
    if fmt == "json":
        out.write(_dumps({
            "name": config.name,
            "valid": not violations,
            "violations": [{"code": v.code, "message": v.message} for v in violations],
            "warnings": warnings,
        }) + "\n")
    else:
        for v in violations:
            out.write(f"violation {v}\n")
        for w in warnings:
            out.write(f"warning: {w}\n")
        out.write(f"{config.name}: {'invalid' if violations else 'valid'}\n")
    return EXIT_ERROR if violations else EXIT_OK


def _invalid(config: GluingConfiguration, err: TextIO) -> bool:
    violations = validate(config)
    for v in violations:
        err.write(f"{config.name}: violation {v}\n")
    return bool(violations)


def _cmd_counts(config: GluingConfiguration, fmt: str, out: TextIO, err: TextIO) -> int:
    if _invalid(config, err):
        return EXIT_ERROR
    c = counts(config)
    if fmt == "json":
        out.write(_dumps({"n1": c.n1, "n2": c.n2, "n3": c.n3, "m1": c.m1, "m2": c.m2}) + "\n")
    else:
        out.write(f"{c}\n")
    return EXIT_OK


def _cmd_matrices(config: GluingConfiguration, fmt: str, out: TextIO, err: TextIO) -> int:
    if _invalid(config, err):
        return EXIT_ERROR
    pair = build_complexes(config)
    if fmt == "json":
        out.write(_dumps({
            name: {"rows": m.rows, "cols": m.cols, "entries": m.to_rows()}
            for name, m in pair.matrices().items()
        }) + "\n")
    else:
        dump_matrices(pair, out)
    return EXIT_OK


def format_report_text(name: str, report: CriterionReport) -> str:
    lines = [
        f"{name}: {report.verdict.value}",
        f"  counts: {report.counts}",
        f"  inequality: m1 - m2 = {report.inequality_lhs}, n1 - n2 + n3 = {report.inequality_rhs}, "
        f"holds: {str(report.inequality_holds).lower()}",
        f"  generation holds: {str(report.generation_holds).lower()}",
        "  sk1 cokernel units rank: "
        + ("unresolved" if report.sk1_coker_units_rank is None else str(report.sk1_coker_units_rank)),
        f"  structure sheaf h1 kernel: {report.structure_h1_kernel}",
        "  trace:",
    ]
    for tag, what, value in report.trace:
        lines.append(f"    [{tag}] {what}: {json.dumps(value)}")
    return "\n".join(lines) + "\n"


def _cmd_check(
    items: list[tuple[str, str | None]],
    assume: bool | None,
    fmt: str,
    dump: bool,
    out: TextIO,
    err: TextIO,
) -> int:
    code = EXIT_OK
    reports = []
    for name, path in items:
        try:
            config = _load(name, path)
        except _InputError as exc:
            err.write(f"error: {exc}\n")
            code = EXIT_ERROR
            continue
        if _invalid(config, err):
            code = EXIT_ERROR
            continue
        normal_fd = assume if assume is not None else path is None
        report = full_verdict(config, normal_fd)
        pair = build_complexes(config)
        ok = check_commutativity(pair)
        if not ok:
            err.write(f"{name}: Mayer-Vietoris diagram does not commute\n")
        if report.verdict is not Verdict.FINITE_DIMENSIONAL or not ok:
            code = max(code, EXIT_FAIL)
        if fmt == "json":
            reports.append(report.to_dict())
        else:
            out.write(format_report_text(name, report))
        if dump:
            # keep JSON stdout parseable
            dump_matrices(pair, err if fmt == "json" else out)
    if fmt == "json" and reports:
        out.write(_dumps(reports[0] if len(items) == 1 else reports) + "\n")
    return code


def _cmd_fixtures(fmt: str, out: TextIO) -> int:
    rows = list_fixtures()
    if fmt == "json":
        out.write(_dumps([
            {"name": n, "source": s, "counts": dict(zip(("n1", "n2", "n3", "m1", "m2"), c.as_tuple()))}
            for n, s, c in rows
        ]) + "\n")
    else:
        width = max(len(n) for n, _, _ in rows)
        for n, s, c in rows:
            out.write(f"{n:<{width}}  {c}  {s}\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "fixtures":
        return _cmd_fixtures(args.format, out)
    try:
        items = _inputs(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "check":
        return _cmd_check(items, args.assume_normalization_fd, args.format, args.dump_matrices, out, err)

    name, path = items[0]
    try:
        config = _load(name, path)
    except _InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    if args.command == "validate":
        return _cmd_validate(config, args.format, out)
    if args.command == "counts":
        return _cmd_counts(config, args.format, out, err)
    return _cmd_matrices(config, args.format, out, err)


if __name__ == "__main__":
    raise SystemExit(main())
