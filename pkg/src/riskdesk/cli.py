"""Command-line workflow: init, record, assess, report, simulate, serve.

Exit codes: 0 success, 1 validation or integrity failure, 2 usage error,
3 reserved for `review-status` finding overdue entries (so schedulers can
distinguish "needs review" from "broke").
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from datetime import date
from pathlib import Path

from . import register as reg
from .errors import ConflictError, RiskdeskError
from .model import (
    Asset,
    AssessmentEntry,
    RemediationRecord,
    ThreatRecord,
    VulnerabilityRecord,
)
from .register_csv import export_csv, import_csv
from .reporting import render_matrix, render_prioritized
from .scales import ScaleKind, parse_rating
from .scenario import (
    parse_assignments,
    parse_effect,
    remediation_from_effect,
    simulate,
    simulate_portfolio,
    commit_effect,
)
from .scoring import CiaImpact, RiskTolerancePolicy, assess

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_STALE = 3

_RECORD_PARSERS = {
    "asset": Asset.from_dict,
    "threat": ThreatRecord.from_dict,
    "vulnerability": VulnerabilityRecord.from_dict,
    "remediation": RemediationRecord.from_dict,
    "entry": AssessmentEntry.from_dict,
}


def _date_arg(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from exc


def _cia_arg(text: str) -> tuple[str, str, str]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected three comma-separated impacts C,I,A, got {text!r}"
        )
    return parts[0], parts[1], parts[2]


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    os.replace(tmp_name, path)


def _emit(text: str, output: str | None) -> None:
    if output:
        _atomic_write_text(Path(output), text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_init(args: argparse.Namespace) -> int:
    path = Path(args.register)
    if path.exists() and not args.force:
        raise RiskdeskError(f"{path} already exists; use --force to overwrite")
    policy = RiskTolerancePolicy(
        low_max=args.low_max,
        medium_max=args.medium_max,
        high_max=args.high_max,
        critical_max=args.critical_max,
    )
    metadata = {}
    for note in args.note or []:
        key, sep, value = note.partition("=")
        if not sep:
            raise RiskdeskError(f"--note expects key=value, got {note!r}")
        metadata[key] = value
    register = reg.new_register(
        policy=policy, review_period_days=args.review_period_days, metadata=metadata
    )
    reg.save_register(register, path)
    print(f"initialized {path} (version 0)")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    register = reg.load_register(args.register)
    pending = sum(1 for e in register.entries.values() if e.needs_recompute)
    print(
        f"ok: version {register.version}, {len(register.assets)} assets, "
        f"{len(register.threats)} threats, {len(register.vulnerabilities)} vulnerabilities, "
        f"{len(register.remediations)} remediations, {len(register.entries)} entries"
    )
    if pending:
        print(f"note: {pending} entries awaiting recompute")
    return EXIT_OK


def cmd_assess(args: argparse.Namespace) -> int:
    policy = RiskTolerancePolicy()
    if args.register:
        policy = reg.load_register(args.register).policy
    cia = CiaImpact(
        confidentiality=parse_rating(ScaleKind.CIA_IMPACT, args.cia[0]),
        integrity=parse_rating(ScaleKind.CIA_IMPACT, args.cia[1]),
        availability=parse_rating(ScaleKind.CIA_IMPACT, args.cia[2]),
    )
    result = assess(
        asset_value=parse_rating(ScaleKind.ASSET_VALUE, args.av),
        threat_level=parse_rating(ScaleKind.THREAT, args.threat),
        cia=cia,
        exposure=parse_rating(ScaleKind.EXPOSURE, args.exposure),
        likelihood=parse_rating(ScaleKind.LIKELIHOOD, args.likelihood),
        vulnerability_override=(
            parse_rating(ScaleKind.VULNERABILITY, args.override)
            if args.override is not None
            else None
        ),
        policy=policy,
    )
    print(
        f"vr={result.vulnerability_rating} tv={result.threat_value} "
        f"ri={result.risk_impact} criticality={result.criticality.label}"
    )
    return EXIT_OK


def _load_record(args: argparse.Namespace):
    if (args.data is None) == (args.file is None):
        raise RiskdeskError("provide the record with exactly one of --data or --file")
    text = args.data if args.data is not None else Path(args.file).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RiskdeskError(f"record is not valid JSON: {exc}") from exc
    return _RECORD_PARSERS[args.kind](payload)


def cmd_upsert(args: argparse.Namespace) -> int:
    register = reg.load_register(args.register)
    if args.expected_version is not None and register.version != args.expected_version:
        raise ConflictError(args.expected_version, register.version)
    record = _load_record(args)
    updated = reg.upsert_and_recompute(register, record)
    reg.save_register(updated, args.register, expected_version=register.version)
    print(f"version {updated.version}")
    return EXIT_OK


def cmd_recompute(args: argparse.Namespace) -> int:
    register = reg.load_register(args.register)
    updated = reg.recompute_all(register)
    if updated.version == register.version:
        print(f"already consistent (version {register.version})")
        return EXIT_OK
    reg.save_register(updated, args.register, expected_version=register.version)
    print(f"version {updated.version}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    register = reg.recompute_all(reg.load_register(args.register))
    if args.view == "matrix":
        document = render_matrix(register, args.format)
    else:
        document = render_prioritized(register, args.format, today=args.today)
    _emit(document.text, args.output)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    register = reg.recompute_all(reg.load_register(args.register))

    if args.scenario:
        if args.apply:
            raise RiskdeskError("--apply works with a single --entry, not --scenario")
        doc = json.loads(Path(args.scenario).read_text(encoding="utf-8"))
        try:
            assignments = parse_assignments(doc)
        except ValueError as exc:
            raise RiskdeskError(str(exc)) from exc
        result = simulate_portfolio(register, assignments)
        for delta in result.deltas:
            _print_delta(delta)
        print(f"total reduction: {result.summary.total_ri_reduction}")
        return EXIT_OK

    if not args.entry:
        raise RiskdeskError("provide --entry ID (or --scenario FILE)")
    try:
        effect = parse_effect(
            {
                "delta_c": args.delta_c,
                "delta_i": args.delta_i,
                "delta_a": args.delta_a,
                "delta_exposure": args.delta_exposure,
                "sets_override": args.set_override,
            }
        )
    except ValueError as exc:
        raise RiskdeskError(str(exc)) from exc
    delta = simulate(register, args.entry, effect)
    _print_delta(delta)

    if args.apply:
        if not args.remediation_id:
            raise RiskdeskError("--apply requires --remediation-id")
        remediation = remediation_from_effect(
            args.remediation_id,
            args.description or f"remediation {args.remediation_id}",
            effect,
            args.date or date.today(),
        )
        loaded = reg.load_register(args.register)
        committed = commit_effect(loaded, args.entry, remediation)
        reg.save_register(committed, args.register, expected_version=loaded.version)
        print(f"applied {args.remediation_id} to {args.entry} (version {committed.version})")
    return EXIT_OK


def _print_delta(delta) -> None:
    print(
        f"{delta.entry_id}: ri {delta.before.risk_impact} -> {delta.after.risk_impact} "
        f"(reduction {delta.ri_reduction}), criticality "
        f"{delta.before.criticality.label} -> {delta.after.criticality.label}"
    )


def cmd_review_status(args: argparse.Namespace) -> int:
    register = reg.load_register(args.register)
    stale = reg.flag_stale(register, args.today or date.today())
    if not stale:
        print(f"no entries overdue (review period {register.review_period_days} days)")
        return EXIT_OK
    for item in stale:
        print(f"{item.entry_id}\t{item.days_since_assessment}")
    return EXIT_STALE


def cmd_import(args: argparse.Namespace) -> int:
    path = Path(args.register)
    if path.exists() and not args.force:
        raise RiskdeskError(f"{path} already exists; use --force to overwrite")
    text = Path(args.input).read_text(encoding="utf-8")
    register = import_csv(text, assessed_date=args.date)
    reg.save_register(register, path)
    print(f"imported {len(register.entries)} entries into {path} (version 0)")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    register = reg.recompute_all(reg.load_register(args.register))
    _emit(export_csv(register), args.output)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    serve(args.register, host=args.host, port=args.port, read_only=args.read_only)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskdesk",
        description="IT and cybersecurity risk assessment workspace",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def register_arg(p: argparse.ArgumentParser, required: bool = True) -> None:
        default = os.environ.get("RISKDESK_REGISTER")
        p.add_argument(
            "--register",
            "-r",
            required=required and default is None,
            default=default,
            help="path to the register document",
        )

    p = sub.add_parser("init", help="create a new empty register")
    register_arg(p)
    p.add_argument("--force", action="store_true", help="overwrite an existing file")
    p.add_argument("--review-period-days", type=int, default=reg.DEFAULT_REVIEW_PERIOD_DAYS)
    p.add_argument("--low-max", type=int, default=45)
    p.add_argument("--medium-max", type=int, default=99)
    p.add_argument("--high-max", type=int, default=199)
    p.add_argument("--critical-max", type=int, default=250)
    p.add_argument("--note", action="append", metavar="KEY=VALUE", help="metadata entry")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("validate", help="check document structure, references, and scores")
    register_arg(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("assess", help="score one finding without touching any file")
    p.add_argument("--av", required=True, help="asset value 1-5")
    p.add_argument("--threat", required=True, help="threat level 1-5 or label")
    p.add_argument("--cia", required=True, type=_cia_arg, help="impacts as C,I,A each 0-4")
    p.add_argument("--exposure", required=True, help="exposure level 1-5 or label")
    p.add_argument("--likelihood", required=True, help="likelihood 1-5 or label")
    p.add_argument("--override", help="direct vulnerability rating 1-5 or label")
    register_arg(p, required=False)
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("upsert", help="insert or replace one record, then recompute")
    register_arg(p)
    p.add_argument("--kind", required=True, choices=sorted(_RECORD_PARSERS))
    p.add_argument("--data", help="record as inline JSON")
    p.add_argument("--file", help="record as a JSON file")
    p.add_argument("--expected-version", type=int, help="refuse unless the register is at this version")
    p.set_defaults(func=cmd_upsert)

    p = sub.add_parser("recompute", help="restore score consistency")
    register_arg(p)
    p.set_defaults(func=cmd_recompute)

    p = sub.add_parser("report", help="render the matrix or the prioritized listing")
    register_arg(p)
    p.add_argument("--format", default="csv", choices=["csv", "markdown", "html", "structured"])
    p.add_argument("--view", default="matrix", choices=["matrix", "prioritized"])
    p.add_argument("--today", type=_date_arg, help="mark staleness in the prioritized view")
    p.add_argument("--output", "-o", help="write to a file (atomic) instead of stdout")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("simulate", help="what-if remediation effects")
    register_arg(p)
    p.add_argument("--entry", help="entry id to simulate against")
    p.add_argument("--delta-c", type=int, default=0, help="confidentiality impact reduction 0-4")
    p.add_argument("--delta-i", type=int, default=0, help="integrity impact reduction 0-4")
    p.add_argument("--delta-a", type=int, default=0, help="availability impact reduction 0-4")
    p.add_argument("--delta-exposure", type=int, default=0, help="exposure reduction 0-4")
    p.add_argument("--set-override", help="direct vulnerability rating after remediation")
    p.add_argument("--scenario", help="JSON file with an assignments array")
    p.add_argument("--apply", action="store_true", help="commit the effect as an implemented remediation")
    p.add_argument("--remediation-id", help="id for the committed remediation record")
    p.add_argument("--description", help="description for the committed remediation")
    p.add_argument("--date", type=_date_arg, help="applied date for the committed remediation")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("review-status", help="list entries overdue for reassessment")
    register_arg(p)
    p.add_argument("--today", type=_date_arg, help="reference date (default: today)")
    p.set_defaults(func=cmd_review_status)

    p = sub.add_parser("import", help="build a register from exported rows")
    register_arg(p)
    p.add_argument("--input", "-i", required=True, help="CSV file to import")
    p.add_argument("--date", type=_date_arg, help="assessed date for imported entries")
    p.add_argument("--force", action="store_true", help="overwrite an existing register")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("export", help="write the register as CSV rows")
    register_arg(p)
    p.add_argument("--output", "-o", help="write to a file (atomic) instead of stdout")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP API")
    register_arg(p)
    p.add_argument("--host", default=os.environ.get("RISKDESK_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("RISKDESK_PORT", "8000")))
    p.add_argument(
        "--read-only",
        action="store_true",
        default=os.environ.get("RISKDESK_READ_ONLY", "") not in ("", "0", "false"),
    )
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (RiskdeskError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
