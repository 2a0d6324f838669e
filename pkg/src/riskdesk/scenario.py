"""What-if remediation simulation.

Simulation answers "what would this entry score if we applied that fix"
without touching the register; commit_effect is the real thing, and is
guaranteed to land exactly where the simulation said it would.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

from .errors import DuplicateEntry, NotImplementedStatus, UnknownEntry
from .model import AssessmentEntry, RemediationEffect, RemediationRecord, RemediationStatus
from .register import RiskRegister, _apply_recompute, assess_entry
from .scales import ScaleKind, parse_rating
from .scoring import AssessmentResult, Criticality, assess


@dataclass(frozen=True)
class RiskDelta:
    """Before/after comparison for one entry under a hypothetical effect."""

    entry_id: str
    before: AssessmentResult
    after: AssessmentResult

    @property
    def ri_reduction(self) -> int:
        return self.before.risk_impact - self.after.risk_impact

    @property
    def criticality_change(self) -> int:
        return int(self.after.criticality) - int(self.before.criticality)

    def to_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "before": self.before.to_dict(),
            "after": self.after.to_dict(),
            "ri_reduction": self.ri_reduction,
            "criticality_change": self.criticality_change,
        }


@dataclass(frozen=True)
class PortfolioSummary:
    total_ri_reduction: int
    criticality_before: dict[str, int]
    criticality_after: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "total_ri_reduction": self.total_ri_reduction,
            "criticality_before": self.criticality_before,
            "criticality_after": self.criticality_after,
        }


@dataclass(frozen=True)
class PortfolioResult:
    deltas: list[RiskDelta] = field(default_factory=list)
    summary: PortfolioSummary = field(
        default_factory=lambda: PortfolioSummary(0, _zero_histogram(), _zero_histogram())
    )

    def to_dict(self) -> dict:
        return {
            "deltas": [delta.to_dict() for delta in self.deltas],
            "summary": self.summary.to_dict(),
        }


def _zero_histogram() -> dict[str, int]:
    return {level.label: 0 for level in Criticality}


def _require_entry(register: RiskRegister, entry_id: str) -> AssessmentEntry:
    entry = register.entries.get(entry_id)
    if entry is None:
        raise UnknownEntry(entry_id)
    return entry


def simulate(register: RiskRegister, entry_id: str, effect: RemediationEffect) -> RiskDelta:
    """Score an entry as-is and again with the effect applied. Pure."""
    entry = _require_entry(register, entry_id)
    asset = register.assets[entry.asset_id]
    threat = register.threats[entry.threat_id]
    vuln = register.vulnerabilities[entry.vulnerability_id]

    before = assess_entry(register, entry)
    new_cia, new_exposure = effect.apply(vuln.cia, vuln.exposure)
    override = effect.sets_override if effect.sets_override is not None else vuln.rating_override
    after = assess(
        asset_value=asset.asset_value,
        threat_level=threat.level,
        cia=new_cia,
        exposure=new_exposure,
        likelihood=entry.likelihood,
        vulnerability_override=override,
        policy=register.policy,
    )
    return RiskDelta(entry_id=entry_id, before=before, after=after)


def _check_assignments(
    register: RiskRegister, assignments: list[tuple[str, RemediationEffect]]
) -> None:
    seen: set[str] = set()
    for entry_id, _ in assignments:
        if entry_id in seen:
            raise DuplicateEntry(f"entry {entry_id} assigned more than once")
        seen.add(entry_id)
        _require_entry(register, entry_id)


def simulate_portfolio(
    register: RiskRegister, assignments: list[tuple[str, RemediationEffect]]
) -> PortfolioResult:
    """Batch simulation: element-wise identical to individual simulate calls."""
    _check_assignments(register, assignments)
    deltas = [simulate(register, entry_id, effect) for entry_id, effect in assignments]
    before_hist = _zero_histogram()
    after_hist = _zero_histogram()
    for delta in deltas:
        before_hist[delta.before.criticality.label] += 1
        after_hist[delta.after.criticality.label] += 1
    summary = PortfolioSummary(
        total_ri_reduction=sum(delta.ri_reduction for delta in deltas),
        criticality_before=before_hist,
        criticality_after=after_hist,
    )
    return PortfolioResult(deltas=deltas, summary=summary)


def rank_remediations(
    register: RiskRegister, candidate_effects: list[tuple[str, RemediationEffect]]
) -> list[RiskDelta]:
    """Candidates ordered by risk relief: biggest reduction first, then the
    riskier starting point, then entry id for a stable total order."""
    result = simulate_portfolio(register, candidate_effects)
    return sorted(
        result.deltas,
        key=lambda delta: (-delta.ri_reduction, -delta.before.risk_impact, delta.entry_id),
    )


def commit_effect(
    register: RiskRegister, entry_id: str, remediation: RemediationRecord
) -> RiskRegister:
    """Apply an implemented remediation for real: one committed mutation.

    The entry's vulnerability record takes the clamped CIA/exposure (and
    override, when the effect sets one), the remediation is recorded and
    linked, and scores are recomputed — landing exactly on the numbers
    simulate reported for the same effect.
    """
    entry = _require_entry(register, entry_id)
    if remediation.status != RemediationStatus.IMPLEMENTED:
        raise NotImplementedStatus(
            f"remediation {remediation.id} has status {remediation.status.value}; "
            "only Implemented remediations can be committed"
        )
    updated = register.clone()
    vuln = updated.vulnerabilities[entry.vulnerability_id]
    new_cia, new_exposure = remediation.effect.apply(vuln.cia, vuln.exposure)
    vuln.cia = new_cia
    vuln.exposure = new_exposure
    if remediation.effect.sets_override is not None:
        vuln.rating_override = remediation.effect.sets_override
    updated.remediations[remediation.id] = remediation
    linked = updated.entries[entry_id]
    if remediation.id not in linked.remediation_ids:
        linked.remediation_ids.append(remediation.id)
    linked.needs_recompute = True
    for other in updated.entries.values():
        if other.vulnerability_id == vuln.id:
            other.needs_recompute = True
    _apply_recompute(updated)
    updated.version += 1
    return updated


# ---------------------------------------------------------------------------
# Scenario documents (shared by the CLI and the what-if endpoint)
# ---------------------------------------------------------------------------


_EFFECT_KEYS = {
    "delta_confidentiality": "delta_confidentiality",
    "delta_c": "delta_confidentiality",
    "delta_integrity": "delta_integrity",
    "delta_i": "delta_integrity",
    "delta_availability": "delta_availability",
    "delta_a": "delta_availability",
    "delta_exposure": "delta_exposure",
}


def parse_effect(data: dict) -> RemediationEffect:
    """Effect from a plain dict; accepts short (delta_c) or full key names."""
    if not isinstance(data, dict):
        raise ValueError("effect must be an object of named deltas")
    kwargs: dict = {}
    for key, value in data.items():
        if key == "sets_override":
            if value is not None:
                kwargs["sets_override"] = parse_rating(ScaleKind.VULNERABILITY, value)
            continue
        field_name = _EFFECT_KEYS.get(key)
        if field_name is None:
            raise ValueError(f"unknown effect field {key!r}")
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"{key} must be an integer, got {value!r}")
        kwargs[field_name] = value
    return RemediationEffect(**kwargs)


def parse_assignments(doc: dict) -> list[tuple[str, RemediationEffect]]:
    """Scenario document: {"assignments": [{"entry_id": …, "effect": {…}}, …]}."""
    if not isinstance(doc, dict) or not isinstance(doc.get("assignments"), list):
        raise ValueError('scenario document must contain an "assignments" array')
    assignments: list[tuple[str, RemediationEffect]] = []
    for index, item in enumerate(doc["assignments"]):
        if not isinstance(item, dict) or "entry_id" not in item:
            raise ValueError(f"assignments[{index}]: expected an object with entry_id")
        effect = parse_effect(item.get("effect", {}))
        assignments.append((str(item["entry_id"]), effect))
    return assignments


def remediation_from_effect(
    remediation_id: str,
    description: str,
    effect: RemediationEffect,
    applied: date,
) -> RemediationRecord:
    """Convenience constructor for the commit path."""
    return RemediationRecord(
        id=remediation_id,
        description=description,
        status=RemediationStatus.IMPLEMENTED,
        effect=effect,
        applied_date=applied,
    )
