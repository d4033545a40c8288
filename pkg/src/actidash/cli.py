"""Operator entry points: validate, gen, serve, report.

Exit status: 0 success, 1 validation/data error, 2 usage error (bad flags,
missing files, unwritable output, busy port).
"""

from __future__ import annotations

import argparse
import json
import logging
import socket
import sys
from datetime import date
from pathlib import Path

from . import analytics, synth
from .config import DEFAULT_CONFIG, load_config
from .ingest import DATA_FILENAMES, ParseError, load_dataset
from .model import ActivityLevel, BiometricKind, ComparisonReport, ValidationReport
from .service import (
    DatasetInvalidError,
    build_snapshot,
    comparison_to_json,
    create_app,
)
from .validation import validate_dataset

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2

# gen without --golden: one subject per archetype over two weeks
_DEFAULT_GEN_SPEC = [(archetype, 1) for archetype in synth.Archetype]
_DEFAULT_GEN_START = date(2015, 3, 1)
_DEFAULT_GEN_DAYS = 14


class _CliError(Exception):
    """Fatal CLI condition with its exit status; message goes to stderr."""

    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actidash",
        description="Wearable-activity analytics: validate data, generate synthetic "
        "cohorts, serve the dashboard API, and print comparison reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate",
        help="check a data directory against every dataset invariant",
        description="Row numbers count data rows (file line = row + 1, after the header).",
    )
    p_validate.add_argument("--data", required=True, type=Path, help="data directory")
    p_validate.add_argument("--json", action="store_true", help="machine-readable report")
    p_validate.set_defaults(handler=_cmd_validate)

    p_gen = sub.add_parser("gen", help="write a deterministic synthetic cohort")
    p_gen.add_argument("--seed", type=int, help="64-bit generator seed")
    p_gen.add_argument("--out", required=True, type=Path, help="output directory")
    p_gen.add_argument(
        "--golden",
        action="store_true",
        help="emit the pinned comparison scenario (ignores --seed)",
    )
    p_gen.set_defaults(handler=_cmd_gen)

    p_serve = sub.add_parser("serve", help="serve the HTTP API over a data directory")
    p_serve.add_argument("--data", required=True, type=Path)
    p_serve.add_argument("--port", required=True, type=int)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--config", type=Path, help="key=value configuration file")
    p_serve.set_defaults(handler=_cmd_serve)

    p_report = sub.add_parser("report", help="print a two-subject comparison report")
    p_report.add_argument("--data", required=True, type=Path)
    p_report.add_argument("--a", required=True, help="first subject id")
    p_report.add_argument("--b", required=True, help="second subject id")
    p_report.add_argument("--max-sedentary-hours", type=float, default=24.0)
    p_report.add_argument("--json", action="store_true")
    p_report.set_defaults(handler=_cmd_report)
    return parser


def _load(data_dir: Path):
    """Shared loader: missing files are usage errors, bad content a data error."""
    missing = [name for name in DATA_FILENAMES if not (data_dir / name).is_file()]
    if missing:
        raise _CliError(
            EXIT_USAGE, f"missing data files in {data_dir}: {', '.join(missing)}"
        )
    return load_dataset(data_dir)


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        subjects, epochs, measurements = _load(args.data)
    except ParseError as exc:
        if args.json:
            print(json.dumps({
                "ok": False,
                "errors": [{"source": exc.source, "line": exc.line, "message": exc.message}],
            }))
        else:
            print(f"PARSE ERROR {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR

    report = validate_dataset(subjects, epochs, measurements)
    if args.json:
        print(json.dumps(_report_to_json(report)))
    else:
        for issue in report.issues:
            rows = " and ".join(str(r) for r in issue.rows)
            print(f"INVALID {issue.source} row {rows}: {issue.message}", file=sys.stderr)
        if report.ok:
            print(
                f"OK: {report.n_subjects} subjects, {report.n_epochs} epochs, "
                f"{report.n_measurements} measurements"
            )
    return EXIT_OK if report.ok else EXIT_DATA_ERROR


def _report_to_json(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "subjects": report.n_subjects,
        "epochs": report.n_epochs,
        "measurements": report.n_measurements,
        "errors": [
            {"source": i.source, "rows": list(i.rows), "message": i.message}
            for i in report.issues
        ],
    }


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.golden:
        files = synth.golden_scenario()
    else:
        if args.seed is None:
            print("error: --seed is required without --golden", file=sys.stderr)
            return EXIT_USAGE
        files = synth.generate_cohort(
            args.seed, _DEFAULT_GEN_SPEC, _DEFAULT_GEN_START, _DEFAULT_GEN_DAYS
        )
    try:
        files.write_to(args.out)
    except OSError as exc:
        print(f"error: cannot write to {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {', '.join(DATA_FILENAMES)} to {args.out}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    try:
        config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        subjects, epochs, measurements = _load(args.data)
        snapshot = build_snapshot(subjects, epochs, measurements, config)
    except ParseError as exc:
        print(f"PARSE ERROR {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except DatasetInvalidError as exc:
        for issue in exc.report.issues:
            rows = " and ".join(str(r) for r in issue.rows)
            print(f"INVALID {issue.source} row {rows}: {issue.message}", file=sys.stderr)
        print("error: refusing to serve an invalid dataset", file=sys.stderr)
        return EXIT_DATA_ERROR

    # Bind before starting uvicorn so a busy port is a clean usage error.
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    app = create_app(snapshot, config)
    print(f"serving {args.data} on http://{args.host}:{args.port}")
    server = uvicorn.Server(
        uvicorn.Config(app, host=args.host, port=args.port, log_level="warning")
    )
    server.run(sockets=[sock])
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    if args.a == args.b:
        print("error: --a and --b must differ", file=sys.stderr)
        return EXIT_USAGE
    try:
        spec = analytics.FilterSpec(max_sedentary_hours=args.max_sedentary_hours)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        subjects, epochs, measurements = _load(args.data)
        snapshot = build_snapshot(subjects, epochs, measurements, DEFAULT_CONFIG)
    except ParseError as exc:
        print(f"PARSE ERROR {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except DatasetInvalidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR

    for subject_id in (args.a, args.b):
        if subject_id not in snapshot.data:
            print(f"error: unknown subject id {subject_id!r}", file=sys.stderr)
            return EXIT_DATA_ERROR

    report = analytics.compare_subjects(
        snapshot.data[args.a],
        snapshot.data[args.b],
        spec,
        list(BiometricKind),
        epsilon_hours=DEFAULT_CONFIG.epsilon_hours,
    )
    if args.json:
        print(json.dumps(comparison_to_json(report)))
    else:
        print(_render_report(report))
    return EXIT_OK


def _render_report(report: ComparisonReport) -> str:
    body = comparison_to_json(report)
    lines = [f"Comparison: subject {report.subject_a} vs subject {report.subject_b}", ""]

    lines.append("Activity breakdown (mean hours/day over retained days):")
    for label, subject_id, bd in (
        ("A", report.subject_a, body["breakdown_a"]),
        ("B", report.subject_b, body["breakdown_b"]),
    ):
        for group in ("weekday", "weekend"):
            means = bd[group]["means"]
            days = bd[group]["days"]
            if means is None:
                lines.append(f"  {label} {subject_id} {group}: no days retained")
            else:
                levels = ", ".join(f"{lv.name} {means[lv.name]}" for lv in ActivityLevel)
                lines.append(f"  {label} {subject_id} {group} ({days} days): {levels}")

    lines.append("")
    lines.append("Biometrics (latest, trend last-first):")
    any_biometrics = False
    for kind, entry in body["biometric_latest"].items():
        if entry["a"]["latest"] is None and entry["b"]["latest"] is None:
            continue
        any_biometrics = True
        sides = []
        for label, subject_id in (("a", report.subject_a), ("b", report.subject_b)):
            if entry[label]["latest"] is None:
                sides.append(f"{subject_id}: no data")
            else:
                sides.append(
                    f"{subject_id}: {entry[label]['latest']} ({entry[label]['trend']:+})"
                )
        lines.append(f"  {kind}: " + "; ".join(sides))
    if not any_biometrics:
        lines.append("  no measurements")

    lines.append("")
    lines.append("Findings:")
    findings = [_describe_flag(flag, report.subject_a, report.subject_b) for flag in body["flags"]]
    if findings:
        lines.extend(f"  - {text}" for text in findings)
    else:
        lines.append("  none")
    return "\n".join(lines)


def _describe_flag(flag: str, a: str, b: str) -> str:
    if flag == "a_more_active_weekend":
        return f"subject {a} is more active during the weekend than subject {b}"
    if flag == "b_more_active_weekend":
        return f"subject {b} is more active during the weekend than subject {a}"
    if flag.startswith("a_higher_"):
        return f"subject {a} has a higher {flag[len('a_higher_'):]} than subject {b}"
    if flag.startswith("b_higher_"):
        return f"subject {b} has a higher {flag[len('b_higher_'):]} than subject {a}"
    return flag


if __name__ == "__main__":
    sys.exit(main())
