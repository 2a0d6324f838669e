"""Record types held by a risk register.

Assets, threats, vulnerabilities, remediations, and assessment entries are
plain mutable dataclasses with explicit ``to_dict``/``from_dict`` codecs so
the register document stays a stable, self-describing JSON schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum

from .errors import OutOfRange
from .scales import ScaleKind, validate
from .scoring import AssessmentResult, CiaImpact


class Phase(str, Enum):
    """Lifecycle phase of an assessment entry."""

    PREPARED = "Prepared"
    CONDUCTED = "Conducted"
    COMMUNICATED = "Communicated"
    MAINTAINED = "Maintained"


class RemediationStatus(str, Enum):
    PLANNED = "Planned"
    IMPLEMENTED = "Implemented"
    REJECTED = "Rejected"


def _require_id(record_id: str, what: str) -> str:
    if not isinstance(record_id, str) or not record_id.strip():
        raise OutOfRange(f"{what} id must be a non-empty string, got {record_id!r}")
    return record_id


def _parse_date(value) -> date:
    if isinstance(value, date):
        return value
    return date.fromisoformat(str(value))


@dataclass
class Asset:
    """An asset, process, or service under assessment."""

    id: str
    name: str
    owner: str
    asset_value: int
    category: str = ""
    valuation_rationale: str = ""

    def __post_init__(self):
        _require_id(self.id, "asset")
        validate(ScaleKind.ASSET_VALUE, self.asset_value)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "owner": self.owner,
            "asset_value": self.asset_value,
            "category": self.category,
            "valuation_rationale": self.valuation_rationale,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Asset":
        return cls(
            id=data["id"],
            name=data["name"],
            owner=data["owner"],
            asset_value=data["asset_value"],
            category=data.get("category", ""),
            valuation_rationale=data.get("valuation_rationale", ""),
        )


@dataclass
class ThreatRecord:
    """An identified threat and its severity level.

    ``source_method`` records where the finding came from (knowledge
    session, historical data, vulnerability assessment, penetration test,
    SIEM or system logs, industry report, ...). Findings are entered by
    people; riskdesk does not ingest scanner output directly.
    """

    id: str
    description: str
    source_method: str
    level: int

    def __post_init__(self):
        _require_id(self.id, "threat")
        validate(ScaleKind.THREAT, self.level)
        if not self.source_method.strip():
            raise OutOfRange("threat source_method must be non-empty")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "source_method": self.source_method,
            "level": self.level,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ThreatRecord":
        return cls(
            id=data["id"],
            description=data["description"],
            source_method=data["source_method"],
            level=data["level"],
        )


@dataclass
class VulnerabilityRecord:
    """A weakness of an asset, scored by CIA impact and exposure.

    ``rating_override`` pins the overall vulnerability rating to a
    committee-chosen value instead of the derived one.
    """

    id: str
    description: str
    affected_asset_id: str
    cia: CiaImpact
    exposure: int
    rating_override: int | None = None

    def __post_init__(self):
        _require_id(self.id, "vulnerability")
        validate(ScaleKind.EXPOSURE, self.exposure)
        if self.rating_override is not None:
            validate(ScaleKind.VULNERABILITY, self.rating_override)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "affected_asset_id": self.affected_asset_id,
            "cia": {
                "confidentiality": self.cia.confidentiality,
                "integrity": self.cia.integrity,
                "availability": self.cia.availability,
            },
            "exposure": self.exposure,
            "rating_override": self.rating_override,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VulnerabilityRecord":
        cia = data["cia"]
        return cls(
            id=data["id"],
            description=data["description"],
            affected_asset_id=data["affected_asset_id"],
            cia=CiaImpact(
                confidentiality=cia["confidentiality"],
                integrity=cia["integrity"],
                availability=cia["availability"],
            ),
            exposure=data["exposure"],
            rating_override=data.get("rating_override"),
        )


@dataclass(frozen=True)
class RemediationEffect:
    """What a remediation does to a vulnerability's scoring inputs.

    Deltas are non-negative reductions: CIA components are lowered and
    clamp at 0, exposure is lowered and clamps at 1. ``sets_override``
    optionally replaces the vulnerability record's rating override
    (a free re-scoring for committees that insist).
    """

    delta_confidentiality: int = 0
    delta_integrity: int = 0
    delta_availability: int = 0
    delta_exposure: int = 0
    sets_override: int | None = None

    def __post_init__(self):
        for name, delta in (
            ("delta_confidentiality", self.delta_confidentiality),
            ("delta_integrity", self.delta_integrity),
            ("delta_availability", self.delta_availability),
            ("delta_exposure", self.delta_exposure),
        ):
            if not isinstance(delta, int) or isinstance(delta, bool) or not 0 <= delta <= 4:
                raise OutOfRange(f"{name} must be an integer in [0, 4], got {delta!r}")
        if self.sets_override is not None:
            validate(ScaleKind.VULNERABILITY, self.sets_override)

    def is_identity(self) -> bool:
        return (
            self.delta_confidentiality == 0
            and self.delta_integrity == 0
            and self.delta_availability == 0
            and self.delta_exposure == 0
            and self.sets_override is None
        )

    def apply(self, cia: CiaImpact, exposure: int) -> tuple[CiaImpact, int]:
        """Adjusted (CIA, exposure) after the reductions, with clamping."""
        adjusted = CiaImpact(
            confidentiality=max(0, cia.confidentiality - self.delta_confidentiality),
            integrity=max(0, cia.integrity - self.delta_integrity),
            availability=max(0, cia.availability - self.delta_availability),
        )
        return adjusted, max(1, exposure - self.delta_exposure)

    def to_dict(self) -> dict:
        return {
            "delta_confidentiality": self.delta_confidentiality,
            "delta_integrity": self.delta_integrity,
            "delta_availability": self.delta_availability,
            "delta_exposure": self.delta_exposure,
            "sets_override": self.sets_override,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RemediationEffect":
        return cls(
            delta_confidentiality=data.get("delta_confidentiality", 0),
            delta_integrity=data.get("delta_integrity", 0),
            delta_availability=data.get("delta_availability", 0),
            delta_exposure=data.get("delta_exposure", 0),
            sets_override=data.get("sets_override"),
        )


@dataclass
class RemediationRecord:
    """A control action (patch, configuration update, policy enhancement)."""

    id: str
    description: str
    status: RemediationStatus
    effect: RemediationEffect = field(default_factory=RemediationEffect)
    applied_date: date | None = None

    def __post_init__(self):
        _require_id(self.id, "remediation")
        self.status = RemediationStatus(self.status)
        if self.status is RemediationStatus.IMPLEMENTED and self.applied_date is None:
            raise OutOfRange(
                f"remediation {self.id}: Implemented status requires applied_date"
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "status": self.status.value,
            "effect": self.effect.to_dict(),
            "applied_date": self.applied_date.isoformat() if self.applied_date else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RemediationRecord":
        applied = data.get("applied_date")
        return cls(
            id=data["id"],
            description=data["description"],
            status=RemediationStatus(data["status"]),
            effect=RemediationEffect.from_dict(data.get("effect", {})),
            applied_date=_parse_date(applied) if applied else None,
        )


@dataclass
class AssessmentEntry:
    """One row of the assessment matrix, tying records to a computed score.

    ``computed`` holds the last assessment result; ``needs_recompute`` is
    set whenever a referenced record changes, and cleared by an explicit
    recompute pass.
    """

    id: str
    asset_id: str
    threat_id: str
    vulnerability_id: str
    likelihood: int
    assessed_date: date
    remediation_ids: list[str] = field(default_factory=list)
    computed: AssessmentResult | None = None
    phase: Phase = Phase.CONDUCTED
    needs_recompute: bool = True

    def __post_init__(self):
        _require_id(self.id, "entry")
        validate(ScaleKind.LIKELIHOOD, self.likelihood)
        self.phase = Phase(self.phase)
        self.assessed_date = _parse_date(self.assessed_date)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "asset_id": self.asset_id,
            "threat_id": self.threat_id,
            "vulnerability_id": self.vulnerability_id,
            "likelihood": self.likelihood,
            "assessed_date": self.assessed_date.isoformat(),
            "remediation_ids": list(self.remediation_ids),
            "computed": self.computed.to_dict() if self.computed else None,
            "phase": self.phase.value,
            "needs_recompute": self.needs_recompute,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AssessmentEntry":
        computed = data.get("computed")
        return cls(
            id=data["id"],
            asset_id=data["asset_id"],
            threat_id=data["threat_id"],
            vulnerability_id=data["vulnerability_id"],
            likelihood=data["likelihood"],
            assessed_date=_parse_date(data["assessed_date"]),
            remediation_ids=list(data.get("remediation_ids", [])),
            computed=AssessmentResult.from_dict(computed) if computed else None,
            phase=Phase(data.get("phase", Phase.CONDUCTED.value)),
            needs_recompute=bool(data.get("needs_recompute", True)),
        )


RegisterRecord = Asset | ThreatRecord | VulnerabilityRecord | RemediationRecord | AssessmentEntry
