"""Versioned risk register: the system of record for assessments.

A register is a value. Mutating operations return a new register with the
version bumped by exactly one per committed mutation; readers never change
it. Persistence is a single self-describing JSON document with canonical
key order, so structurally equal registers serialize to identical bytes.
"""

from __future__ import annotations

import copy
import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import NamedTuple

from .errors import (
    ConflictError,
    FutureDateError,
    IntegrityError,
    IoError,
    NotFound,
    ParseError,
    RiskdeskError,
)
from .model import (
    Asset,
    AssessmentEntry,
    RegisterRecord,
    RemediationRecord,
    ThreatRecord,
    VulnerabilityRecord,
)
from .scoring import AssessmentResult, RiskTolerancePolicy, assess

DOCUMENT_KIND = "risk-register"
SCHEMA_VERSION = 1
DEFAULT_REVIEW_PERIOD_DAYS = 183  # six-month review cadence, fixed as a day count


@dataclass
class RiskRegister:
    """All collections plus review policy and tolerance thresholds."""

    version: int = 0
    assets: dict[str, Asset] = field(default_factory=dict)
    threats: dict[str, ThreatRecord] = field(default_factory=dict)
    vulnerabilities: dict[str, VulnerabilityRecord] = field(default_factory=dict)
    remediations: dict[str, RemediationRecord] = field(default_factory=dict)
    entries: dict[str, AssessmentEntry] = field(default_factory=dict)
    policy: RiskTolerancePolicy = field(default_factory=RiskTolerancePolicy)
    review_period_days: int = DEFAULT_REVIEW_PERIOD_DAYS
    metadata: dict[str, str] = field(default_factory=dict)

    def clone(self) -> "RiskRegister":
        return copy.deepcopy(self)

    def is_consistent(self) -> bool:
        """True when no entry is flagged for recompute and all have scores."""
        return all(
            not entry.needs_recompute and entry.computed is not None
            for entry in self.entries.values()
        )


class StaleEntry(NamedTuple):
    entry_id: str
    days_since_assessment: int


def new_register(
    policy: RiskTolerancePolicy | None = None,
    review_period_days: int = DEFAULT_REVIEW_PERIOD_DAYS,
    metadata: dict[str, str] | None = None,
) -> RiskRegister:
    """Fresh empty register at version 0."""
    if review_period_days < 1:
        raise ParseError("review_period_days", "must be a positive integer")
    return RiskRegister(
        policy=policy or RiskTolerancePolicy(),
        review_period_days=review_period_days,
        metadata=dict(metadata or {}),
    )


# ---------------------------------------------------------------------------
# Integrity and scoring over current records
# ---------------------------------------------------------------------------


def find_dangling(register: RiskRegister) -> list[str]:
    """Human-readable list of references that do not resolve."""
    dangling: list[str] = []
    for vuln in register.vulnerabilities.values():
        if vuln.affected_asset_id not in register.assets:
            dangling.append(
                f"vulnerability {vuln.id}: unknown asset {vuln.affected_asset_id}"
            )
    for entry in register.entries.values():
        if entry.asset_id not in register.assets:
            dangling.append(f"entry {entry.id}: unknown asset {entry.asset_id}")
        if entry.threat_id not in register.threats:
            dangling.append(f"entry {entry.id}: unknown threat {entry.threat_id}")
        if entry.vulnerability_id not in register.vulnerabilities:
            dangling.append(
                f"entry {entry.id}: unknown vulnerability {entry.vulnerability_id}"
            )
        for rem_id in entry.remediation_ids:
            if rem_id not in register.remediations:
                dangling.append(f"entry {entry.id}: unknown remediation {rem_id}")
    return dangling


def check_integrity(register: RiskRegister) -> None:
    dangling = find_dangling(register)
    if dangling:
        raise IntegrityError(dangling)


def assess_entry(register: RiskRegister, entry: AssessmentEntry) -> AssessmentResult:
    """Score one entry from the records it currently references."""
    asset = register.assets[entry.asset_id]
    threat = register.threats[entry.threat_id]
    vuln = register.vulnerabilities[entry.vulnerability_id]
    return assess(
        asset_value=asset.asset_value,
        threat_level=threat.level,
        cia=vuln.cia,
        exposure=vuln.exposure,
        likelihood=entry.likelihood,
        vulnerability_override=vuln.rating_override,
        policy=register.policy,
    )


# ---------------------------------------------------------------------------
# Mutations (each public function is one committed mutation)
# ---------------------------------------------------------------------------


def _scoring_inputs(record: RegisterRecord) -> tuple:
    """The fields of a record that feed the scoring pipeline."""
    if isinstance(record, Asset):
        return (record.asset_value,)
    if isinstance(record, ThreatRecord):
        return (record.level,)
    if isinstance(record, VulnerabilityRecord):
        return (record.cia, record.exposure, record.rating_override)
    return ()


def _collection_for(register: RiskRegister, record: RegisterRecord) -> dict:
    if isinstance(record, Asset):
        return register.assets
    if isinstance(record, ThreatRecord):
        return register.threats
    if isinstance(record, VulnerabilityRecord):
        return register.vulnerabilities
    if isinstance(record, RemediationRecord):
        return register.remediations
    if isinstance(record, AssessmentEntry):
        return register.entries
    raise TypeError(f"not a register record: {type(record).__name__}")


def _flag_dependents(register: RiskRegister, record: RegisterRecord) -> None:
    for entry in register.entries.values():
        if isinstance(record, Asset) and entry.asset_id == record.id:
            entry.needs_recompute = True
        elif isinstance(record, ThreatRecord) and entry.threat_id == record.id:
            entry.needs_recompute = True
        elif isinstance(record, VulnerabilityRecord) and entry.vulnerability_id == record.id:
            entry.needs_recompute = True


def _apply_upsert(register: RiskRegister, record: RegisterRecord) -> None:
    collection = _collection_for(register, record)
    existing = collection.get(record.id)
    record = copy.deepcopy(record)
    if isinstance(record, AssessmentEntry):
        record.needs_recompute = True
    collection[record.id] = record
    check_integrity(register)
    if existing is None or _scoring_inputs(existing) != _scoring_inputs(record):
        _flag_dependents(register, record)


def _apply_recompute(register: RiskRegister) -> bool:
    check_integrity(register)
    changed = False
    for entry in register.entries.values():
        try:
            result = assess_entry(register, entry)
        except RiskdeskError as exc:
            raise type(exc)(f"entry {entry.id}: {exc}") from exc
        if entry.computed != result or entry.needs_recompute:
            changed = True
        entry.computed = result
        entry.needs_recompute = False
    return changed


def upsert(register: RiskRegister, record: RegisterRecord) -> RiskRegister:
    """Insert or replace a record by id; dependent entries are flagged stale."""
    updated = register.clone()
    _apply_upsert(updated, record)
    updated.version += 1
    return updated


def recompute_all(register: RiskRegister) -> RiskRegister:
    """Restore score consistency for every entry.

    Returns the register unchanged (same object, same version) when it is
    already consistent; otherwise a new register at version + 1.
    """
    updated = register.clone()
    if not _apply_recompute(updated):
        return register
    updated.version += 1
    return updated


def upsert_and_recompute(register: RiskRegister, record: RegisterRecord) -> RiskRegister:
    """Upsert plus recompute as a single committed mutation (version + 1).

    This is the commit path the service and CLI use, so a record change
    and the scores it implies always land together.
    """
    updated = register.clone()
    _apply_upsert(updated, record)
    _apply_recompute(updated)
    updated.version += 1
    return updated


def flag_stale(register: RiskRegister, today: date) -> list[StaleEntry]:
    """Entries overdue for review, most stale first.

    An entry is stale when strictly more days than ``review_period_days``
    have passed since its assessment date.
    """
    for entry in register.entries.values():
        if entry.assessed_date > today:
            raise FutureDateError(
                f"entry {entry.id} assessed {entry.assessed_date.isoformat()}, "
                f"after {today.isoformat()}"
            )
    stale = [
        StaleEntry(entry.id, (today - entry.assessed_date).days)
        for entry in register.entries.values()
        if (today - entry.assessed_date).days > register.review_period_days
    ]
    stale.sort(key=lambda item: (-item.days_since_assessment, item.entry_id))
    return stale


# ---------------------------------------------------------------------------
# Document serialization
# ---------------------------------------------------------------------------


def to_document(register: RiskRegister) -> dict:
    """Register as a plain JSON-ready dict with collections sorted by id."""
    return {
        "document": DOCUMENT_KIND,
        "schema_version": SCHEMA_VERSION,
        "version": register.version,
        "review_period_days": register.review_period_days,
        "policy": {
            "low_max": register.policy.low_max,
            "medium_max": register.policy.medium_max,
            "high_max": register.policy.high_max,
            "critical_max": register.policy.critical_max,
        },
        "metadata": dict(sorted(register.metadata.items())),
        "assets": [register.assets[k].to_dict() for k in sorted(register.assets)],
        "threats": [register.threats[k].to_dict() for k in sorted(register.threats)],
        "vulnerabilities": [
            register.vulnerabilities[k].to_dict() for k in sorted(register.vulnerabilities)
        ],
        "remediations": [
            register.remediations[k].to_dict() for k in sorted(register.remediations)
        ],
        "entries": [register.entries[k].to_dict() for k in sorted(register.entries)],
    }


def dumps(register: RiskRegister) -> str:
    """Canonical UTF-8 text form: sorted keys, two-space indent, one trailing newline."""
    return json.dumps(to_document(register), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


_PARSERS = {
    "assets": Asset.from_dict,
    "threats": ThreatRecord.from_dict,
    "vulnerabilities": VulnerabilityRecord.from_dict,
    "remediations": RemediationRecord.from_dict,
    "entries": AssessmentEntry.from_dict,
}


def from_document(doc: dict) -> RiskRegister:
    """Parse and fully verify a register document.

    Schema problems raise ParseError with a path-like position; dangling
    references raise IntegrityError listing every bad reference.
    """
    if not isinstance(doc, dict):
        raise ParseError("$", "register document must be a JSON object")
    if doc.get("document") != DOCUMENT_KIND:
        raise ParseError("document", f"expected {DOCUMENT_KIND!r}, got {doc.get('document')!r}")

    try:
        policy_doc = doc.get("policy", {})
        policy = RiskTolerancePolicy(
            low_max=policy_doc.get("low_max", 45),
            medium_max=policy_doc.get("medium_max", 99),
            high_max=policy_doc.get("high_max", 199),
            critical_max=policy_doc.get("critical_max", 250),
        )
    except (RiskdeskError, TypeError) as exc:
        raise ParseError("policy", str(exc)) from exc

    version = doc.get("version", 0)
    if not isinstance(version, int) or version < 0:
        raise ParseError("version", f"must be a non-negative integer, got {version!r}")
    review_period = doc.get("review_period_days", DEFAULT_REVIEW_PERIOD_DAYS)
    if not isinstance(review_period, int) or review_period < 1:
        raise ParseError("review_period_days", f"must be a positive integer, got {review_period!r}")

    register = RiskRegister(
        version=version,
        policy=policy,
        review_period_days=review_period,
        metadata={str(k): str(v) for k, v in doc.get("metadata", {}).items()},
    )

    for key, parser in _PARSERS.items():
        collection: dict = getattr(register, key)
        for index, item in enumerate(doc.get(key, [])):
            position = f"{key}[{index}]"
            try:
                record = parser(item)
            except (RiskdeskError, KeyError, TypeError, ValueError) as exc:
                raise ParseError(position, str(exc)) from exc
            if record.id in collection:
                raise ParseError(position, f"duplicate id {record.id!r}")
            collection[record.id] = record

    check_integrity(register)
    _verify_computed(register)
    return register


def _verify_computed(register: RiskRegister) -> None:
    """Entries claiming consistency must actually match a fresh assessment."""
    for entry in register.entries.values():
        if entry.needs_recompute:
            continue
        position = f"entries[{entry.id}].computed"
        if entry.computed is None:
            raise ParseError(position, "missing score on an entry not flagged for recompute")
        result = assess_entry(register, entry)
        if entry.computed != result:
            raise ParseError(
                position,
                "stored score disagrees with current records; "
                "set needs_recompute or run a recompute",
            )


def loads(text: str) -> RiskRegister:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return from_document(doc)


def load_register(location: str | Path) -> RiskRegister:
    path = Path(location)
    if not path.exists():
        raise NotFound(f"no register document at {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def save_register(
    register: RiskRegister,
    location: str | Path,
    expected_version: int | None = None,
) -> None:
    """Atomically write the canonical document (temp file + rename).

    ``expected_version`` enables optimistic concurrency: when given and the
    file already holds a different version, the save is refused with
    ConflictError instead of clobbering someone else's commit.
    """
    path = Path(location)
    if expected_version is not None and path.exists():
        on_disk = load_register(path)
        if on_disk.version != expected_version:
            raise ConflictError(expected_version, on_disk.version)
    data = dumps(register).encode("utf-8")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
