"""Flat CSV exchange format for the register.

One row per assessment entry, denormalized across the referenced asset,
threat, and vulnerability records. The header is a fixed contract; import
refuses anything else rather than guessing at column meaning.
"""

from __future__ import annotations

import csv
import io
from datetime import date

from .errors import HeaderMismatch, InconsistentRegister, RowError
from .model import (
    Asset,
    AssessmentEntry,
    RemediationRecord,
    RemediationStatus,
    ThreatRecord,
    VulnerabilityRecord,
)
from .register import RiskRegister, assess_entry, check_integrity, new_register
from .scales import ScaleKind, parse_rating
from .scoring import CiaImpact, Criticality, derive_vulnerability_rating

HEADER = [
    "SI",
    "Asset/Service",
    "Owner",
    "AssetValue",
    "Threat",
    "ThreatLevel",
    "Vulnerability",
    "Remediation",
    "ImpactC",
    "ImpactI",
    "ImpactA",
    "VulnLevel",
    "ThreatValue",
    "Likelihood",
    "RiskImpactRating",
    "CriticalityLevel",
]

_REMEDIATION_JOIN = "; "


def entry_rows(register: RiskRegister) -> list[list[str]]:
    """Denormalized table rows for every entry, in canonical id order.

    Requires a score-consistent register so the emitted numbers are the
    committed ones, not a silent recomputation.
    """
    stale = [e.id for e in register.entries.values() if e.needs_recompute or e.computed is None]
    if stale:
        raise InconsistentRegister(
            f"entries need recompute before rendering: {', '.join(sorted(stale))}"
        )
    rows: list[list[str]] = []
    for serial, entry_id in enumerate(sorted(register.entries), start=1):
        entry = register.entries[entry_id]
        asset = register.assets[entry.asset_id]
        threat = register.threats[entry.threat_id]
        vuln = register.vulnerabilities[entry.vulnerability_id]
        computed = entry.computed
        assert computed is not None
        remediation = _REMEDIATION_JOIN.join(
            register.remediations[rid].description for rid in entry.remediation_ids
        )
        rows.append(
            [
                str(serial),
                asset.name,
                asset.owner,
                str(asset.asset_value),
                threat.description,
                str(threat.level),
                vuln.description,
                remediation,
                str(vuln.cia.confidentiality),
                str(vuln.cia.integrity),
                str(vuln.cia.availability),
                str(computed.vulnerability_rating),
                str(computed.threat_value),
                str(entry.likelihood),
                str(computed.risk_impact),
                computed.criticality.label,
            ]
        )
    return rows


def export_csv(register: RiskRegister) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HEADER)
    writer.writerows(entry_rows(register))
    return buffer.getvalue()


def _parse_int(kind: ScaleKind, text: str, line: int, column: str) -> int:
    try:
        return parse_rating(kind, text)
    except Exception as exc:
        raise RowError(line, f"{column}: {exc}") from exc


def import_csv(text: str, assessed_date: date | None = None) -> RiskRegister:
    """Build a fresh register (version 0) from exported rows.

    The file carries no assessment dates, so every imported entry takes
    ``assessed_date`` (default: today). Supplied score columns are checked
    against a recomputation; a mismatch fails that row instead of silently
    keeping either value. Blank score cells are simply filled in.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise HeaderMismatch(f"empty input; expected header {','.join(HEADER)}") from None
    if header != HEADER:
        raise HeaderMismatch(
            f"expected header {','.join(HEADER)}, got {','.join(header)}"
        )

    register = new_register()
    when = assessed_date or date.today()
    asset_ids: dict[tuple, str] = {}
    threat_ids: dict[tuple, str] = {}
    remediation_ids: dict[str, str] = {}

    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(HEADER):
            raise RowError(line, f"expected {len(HEADER)} columns, got {len(row)}")
        (
            si,
            asset_name,
            owner,
            asset_value_text,
            threat_text,
            threat_level_text,
            vuln_text,
            remediation_text,
            impact_c,
            impact_i,
            impact_a,
            vuln_level_text,
            threat_value_text,
            likelihood_text,
            risk_impact_text,
            criticality_text,
        ) = row

        if not si.strip().isdigit():
            raise RowError(line, f"SI: expected a positive integer, got {si!r}")

        asset_value = _parse_int(ScaleKind.ASSET_VALUE, asset_value_text, line, "AssetValue")
        threat_level = _parse_int(ScaleKind.THREAT, threat_level_text, line, "ThreatLevel")
        cia = CiaImpact(
            confidentiality=_parse_int(ScaleKind.CIA_IMPACT, impact_c, line, "ImpactC"),
            integrity=_parse_int(ScaleKind.CIA_IMPACT, impact_i, line, "ImpactI"),
            availability=_parse_int(ScaleKind.CIA_IMPACT, impact_a, line, "ImpactA"),
        )
        vuln_level = _parse_int(ScaleKind.VULNERABILITY, vuln_level_text, line, "VulnLevel")
        likelihood = _parse_int(ScaleKind.LIKELIHOOD, likelihood_text, line, "Likelihood")

        # The flat file has no separate exposure column; the vulnerability
        # level is the best available stand-in. When the derivation from
        # CIA disagrees, the supplied level is kept as a direct rating.
        exposure = vuln_level
        derived = derive_vulnerability_rating(cia, exposure)
        override = None if derived == vuln_level else vuln_level

        asset_key = (asset_name, owner, asset_value)
        if asset_key not in asset_ids:
            asset_id = f"asset-{len(asset_ids) + 1:04d}"
            asset_ids[asset_key] = asset_id
            register.assets[asset_id] = Asset(
                id=asset_id, name=asset_name, owner=owner, asset_value=asset_value
            )
        asset_id = asset_ids[asset_key]

        threat_key = (threat_text, threat_level)
        if threat_key not in threat_ids:
            threat_id = f"threat-{len(threat_ids) + 1:04d}"
            threat_ids[threat_key] = threat_id
            register.threats[threat_id] = ThreatRecord(
                id=threat_id,
                description=threat_text,
                source_method="imported register row",
                level=threat_level,
            )
        threat_id = threat_ids[threat_key]

        entry_serial = len(register.entries) + 1
        vuln_id = f"vuln-{entry_serial:04d}"
        register.vulnerabilities[vuln_id] = VulnerabilityRecord(
            id=vuln_id,
            description=vuln_text,
            affected_asset_id=asset_id,
            cia=cia,
            exposure=exposure,
            rating_override=override,
        )

        entry_remediations: list[str] = []
        for text_part in remediation_text.split(_REMEDIATION_JOIN) if remediation_text else []:
            if text_part not in remediation_ids:
                rem_id = f"rem-{len(remediation_ids) + 1:04d}"
                remediation_ids[text_part] = rem_id
                register.remediations[rem_id] = RemediationRecord(
                    id=rem_id, description=text_part, status=RemediationStatus.PLANNED
                )
            entry_remediations.append(remediation_ids[text_part])

        entry_id = f"entry-{entry_serial:04d}"
        entry = AssessmentEntry(
            id=entry_id,
            asset_id=asset_id,
            threat_id=threat_id,
            vulnerability_id=vuln_id,
            likelihood=likelihood,
            assessed_date=when,
            remediation_ids=entry_remediations,
        )
        register.entries[entry_id] = entry

        computed = assess_entry(register, entry)
        _check_supplied(line, "ThreatValue", threat_value_text, computed.threat_value)
        _check_supplied(line, "RiskImpactRating", risk_impact_text, computed.risk_impact)
        if criticality_text.strip():
            supplied_rank = _parse_int(
                ScaleKind.CRITICALITY, criticality_text, line, "CriticalityLevel"
            )
            if supplied_rank != computed.criticality:
                raise RowError(
                    line,
                    f"CriticalityLevel: supplied {Criticality(supplied_rank).label} disagrees "
                    f"with computed {computed.criticality.label}",
                )
        entry.computed = computed
        entry.needs_recompute = False

    check_integrity(register)
    return register


def _check_supplied(line: int, column: str, text: str, computed: int) -> None:
    if not text.strip():
        return
    try:
        supplied = int(text.strip())
    except ValueError:
        raise RowError(line, f"{column}: expected an integer, got {text!r}") from None
    if supplied != computed:
        raise RowError(
            line, f"{column}: supplied {supplied} disagrees with computed {computed}"
        )
