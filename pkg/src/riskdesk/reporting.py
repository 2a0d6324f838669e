"""Rendering: the assessment matrix, prioritized risk listings, summaries.

Every format is deterministic — the same register version renders to the
same bytes, so documents can be diffed, cached, and compared across the
CLI and the HTTP service. The generated_at stamp lives on the document
object only and never enters the rendered text.
"""

from __future__ import annotations

import csv
import html
import io
import json
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from enum import Enum

from .errors import InconsistentRegister
from .register import RiskRegister, flag_stale
from .register_csv import HEADER, entry_rows
from .scales import ScaleKind, map_label
from .scoring import Criticality


class ReportFormat(str, Enum):
    CSV = "csv"
    MARKDOWN = "markdown"
    HTML = "html"
    STRUCTURED = "structured"


CRITICALITY_CLASSES = {
    Criticality.LOW: "crit-low",
    Criticality.MEDIUM: "crit-medium",
    Criticality.HIGH: "crit-high",
    Criticality.CRITICAL: "crit-critical",
}

PRIORITIZED_HEADER = [
    "Priority",
    "EntryId",
    "Asset/Service",
    "Owner",
    "ThreatValue",
    "Likelihood",
    "RiskImpactRating",
    "CriticalityLevel",
    "AssessedDate",
    "ReviewBy",
    "Stale",
]

# Columns that pair the numeric rating with its label in the readable formats.
_MATRIX_LABELED = {5: ScaleKind.THREAT, 11: ScaleKind.VULNERABILITY, 13: ScaleKind.LIKELIHOOD}
_PRIORITIZED_LABELED = {5: ScaleKind.LIKELIHOOD}


@dataclass
class MatrixDocument:
    kind: str
    format: ReportFormat
    columns: list[str]
    rows: list[list[str]]
    register_version: int
    text: str
    generated_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))


@dataclass(frozen=True)
class SummaryStats:
    counts_by_criticality: dict[str, int]
    top_risks: list[tuple[str, int]]
    stale_count: int
    mean_ri: float

    def to_dict(self) -> dict:
        return {
            "counts_by_criticality": self.counts_by_criticality,
            "top_risks": [{"entry_id": e, "ri": ri} for e, ri in self.top_risks],
            "stale_count": self.stale_count,
            "mean_ri": self.mean_ri,
        }


def _require_consistent(register: RiskRegister) -> None:
    stale = [e.id for e in register.entries.values() if e.needs_recompute or e.computed is None]
    if stale:
        raise InconsistentRegister(
            f"entries need recompute before rendering: {', '.join(sorted(stale))}"
        )


def _decorate(rows: list[list[str]], labeled: dict[int, ScaleKind]) -> list[list[str]]:
    decorated = []
    for row in rows:
        new_row = list(row)
        for index, kind in labeled.items():
            cell = new_row[index]
            if cell.lstrip("-").isdigit():
                new_row[index] = f"{cell} — {map_label(kind, int(cell))}"
        decorated.append(new_row)
    return decorated


def _csv_text(columns: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def _markdown_cell(cell: str) -> str:
    return cell.replace("|", "\\|").replace("\n", " ")


def _markdown_text(columns: list[str], rows: list[list[str]]) -> str:
    lines = [
        "| " + " | ".join(_markdown_cell(c) for c in columns) + " |",
        "| " + " | ".join("---" for _ in columns) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_markdown_cell(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def _html_text(
    kind: str,
    title: str,
    columns: list[str],
    rows: list[list[str]],
    row_ids: list[str],
    row_classes: list[str],
    register_version: int,
) -> str:
    lines = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>{html.escape(title)}</title>",
        "</head>",
        "<body>",
        f'<table id="{html.escape(kind)}" data-register-version="{register_version}">',
        "<thead>",
        "<tr>" + "".join(f"<th>{html.escape(c)}</th>" for c in columns) + "</tr>",
        "</thead>",
        "<tbody>",
    ]
    for row, row_id, row_class in zip(rows, row_ids, row_classes):
        cells = "".join(f"<td>{html.escape(c)}</td>" for c in row)
        lines.append(f'<tr id="{html.escape(row_id)}" class="{row_class}">{cells}</tr>')
    lines += ["</tbody>", "</table>", "</body>", "</html>"]
    return "\n".join(lines) + "\n"


def _structured_text(kind: str, columns: list[str], rows: list[list[str]], version: int) -> str:
    doc = {"document": kind, "register_version": version, "columns": columns, "rows": rows}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _render(
    register: RiskRegister,
    fmt: ReportFormat | str,
    kind: str,
    title: str,
    columns: list[str],
    rows: list[list[str]],
    labeled: dict[int, ScaleKind],
    row_ids: list[str],
    row_classes: list[str],
) -> MatrixDocument:
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.CSV:
        text = _csv_text(columns, rows)
    elif fmt is ReportFormat.MARKDOWN:
        text = _markdown_text(columns, _decorate(rows, labeled))
    elif fmt is ReportFormat.HTML:
        text = _html_text(
            kind, title, columns, _decorate(rows, labeled), row_ids, row_classes, register.version
        )
    else:
        text = _structured_text(kind, columns, rows, register.version)
    return MatrixDocument(
        kind=kind,
        format=fmt,
        columns=list(columns),
        rows=rows,
        register_version=register.version,
        text=text,
    )


def render_matrix(register: RiskRegister, fmt: ReportFormat | str) -> MatrixDocument:
    """The full assessment matrix, one row per entry, in the fixed layout."""
    _require_consistent(register)
    rows = entry_rows(register)
    entry_ids = sorted(register.entries)
    classes = [
        CRITICALITY_CLASSES[register.entries[e].computed.criticality]  # type: ignore[union-attr]
        for e in entry_ids
    ]
    return _render(
        register,
        fmt,
        kind="risk-matrix",
        title="Risk assessment matrix",
        columns=list(HEADER),
        rows=rows,
        labeled=_MATRIX_LABELED,
        row_ids=[f"row-{e}" for e in entry_ids],
        row_classes=classes,
    )


def render_prioritized(
    register: RiskRegister, fmt: ReportFormat | str, today: date | None = None
) -> MatrixDocument:
    """Entries ordered by attention required: criticality rank descending,
    then risk impact descending, then asset id, then entry id.

    The ReviewBy column is the last in-cadence day (assessed date plus the
    register's review period). The Stale column is filled in only when a
    reference date is supplied, keeping default renders clock-free.
    """
    _require_consistent(register)
    stale_ids: set[str] = set()
    if today is not None:
        stale_ids = {item.entry_id for item in flag_stale(register, today)}

    def sort_key(entry_id: str):
        entry = register.entries[entry_id]
        computed = entry.computed
        assert computed is not None
        return (-int(computed.criticality), -computed.risk_impact, entry.asset_id, entry.id)

    ordered = sorted(register.entries, key=sort_key)
    rows: list[list[str]] = []
    classes: list[str] = []
    for priority, entry_id in enumerate(ordered, start=1):
        entry = register.entries[entry_id]
        asset = register.assets[entry.asset_id]
        computed = entry.computed
        assert computed is not None
        review_by = entry.assessed_date + timedelta(days=register.review_period_days)
        stale_cell = "" if today is None else ("yes" if entry_id in stale_ids else "no")
        rows.append(
            [
                str(priority),
                entry.id,
                asset.name,
                asset.owner,
                str(computed.threat_value),
                str(entry.likelihood),
                str(computed.risk_impact),
                computed.criticality.label,
                entry.assessed_date.isoformat(),
                review_by.isoformat(),
                stale_cell,
            ]
        )
        classes.append(CRITICALITY_CLASSES[computed.criticality])
    return _render(
        register,
        fmt,
        kind="prioritized-risks",
        title="Prioritized risks",
        columns=list(PRIORITIZED_HEADER),
        rows=rows,
        labeled=_PRIORITIZED_LABELED,
        row_ids=[f"priority-{e}" for e in ordered],
        row_classes=classes,
    )


def summarize(register: RiskRegister, top_n: int, today: date | None = None) -> SummaryStats:
    """Counts, top risks, staleness, and mean risk impact for dashboards."""
    if top_n < 1:
        raise ValueError(f"top_n must be a positive integer, got {top_n}")
    _require_consistent(register)
    counts = {level.label: 0 for level in Criticality}
    scored: list[tuple[str, int]] = []
    for entry_id in sorted(register.entries):
        computed = register.entries[entry_id].computed
        assert computed is not None
        counts[computed.criticality.label] += 1
        scored.append((entry_id, computed.risk_impact))
    scored.sort(key=lambda item: (-item[1], item[0]))
    stale = flag_stale(register, today or date.today())
    mean = round(sum(ri for _, ri in scored) / len(scored), 2) if scored else 0.0
    return SummaryStats(
        counts_by_criticality=counts,
        top_risks=scored[:top_n],
        stale_count=len(stale),
        mean_ri=mean,
    )
