"""Pure scoring pipeline: from committee ratings to a criticality call.

The pipeline is four deterministic integer computations:

1. An overall vulnerability rating (1-5) is derived from per-component
   CIA impacts (0-4) and asset exposure (1-5), unless a committee
   supplies a direct override.
2. Threat value = threat level + vulnerability rating, range 2-10.
3. Risk impact = asset value x threat value x likelihood, range 2-250.
4. The risk impact is bucketed into Low / Medium / High / Critical
   against an organization's risk-tolerance thresholds.

Nothing here performs I/O or holds state; every function is safe to call
concurrently and returns identical outputs for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

from .errors import NegativeRate, OutOfPolicyRange, OutOfRange
from .scales import ScaleKind, map_label, validate


@dataclass(frozen=True)
class CiaImpact:
    """Impact of a vulnerability on confidentiality, integrity, availability.

    Each component ranges 0 (no impact) to 4 (critical impact).
    """

    confidentiality: int
    integrity: int
    availability: int

    def __post_init__(self):
        for component in (self.confidentiality, self.integrity, self.availability):
            validate(ScaleKind.CIA_IMPACT, component)

    @property
    def worst(self) -> int:
        return max(self.confidentiality, self.integrity, self.availability)


class Criticality(IntEnum):
    """Four-tier criticality ranking, ordered LOW < ... < CRITICAL."""

    LOW = 1
    MEDIUM = 2
    HIGH = 3
    CRITICAL = 4

    @property
    def label(self) -> str:
        return map_label(ScaleKind.CRITICALITY, int(self))

    @classmethod
    def from_label(cls, label: str) -> "Criticality":
        from .scales import unmap_label

        return cls(unmap_label(ScaleKind.CRITICALITY, label))


@dataclass(frozen=True)
class RiskTolerancePolicy:
    """Upper bounds (inclusive) of the four criticality buckets.

    Defaults are the standard thresholds: Low up to 45, Medium up to 99,
    High up to 199, Critical up to 250. Organizations may substitute any
    strictly increasing partition as long as it still covers the maximum
    achievable score of 250.
    """

    low_max: int = 45
    medium_max: int = 99
    high_max: int = 199
    critical_max: int = 250

    def __post_init__(self):
        if not 1 <= self.low_max < self.medium_max < self.high_max < self.critical_max:
            raise OutOfPolicyRange(
                "policy thresholds must satisfy "
                "1 <= low_max < medium_max < high_max < critical_max, got "
                f"{self.low_max}, {self.medium_max}, {self.high_max}, {self.critical_max}"
            )
        if self.critical_max < 250:
            raise OutOfPolicyRange(
                f"critical_max must cover the maximum achievable score 250, "
                f"got {self.critical_max}"
            )


DEFAULT_POLICY = RiskTolerancePolicy()


class VulnerabilitySource(str, Enum):
    """Whether a vulnerability rating was supplied or derived from CIA/exposure."""

    DIRECT = "direct"
    DERIVED = "derived"


@dataclass(frozen=True)
class AssessmentResult:
    """Computed outcome for one entry: rating, threat value, score, bucket."""

    vulnerability_rating: int
    threat_value: int
    risk_impact: int
    criticality: Criticality
    vulnerability_source: VulnerabilitySource = VulnerabilitySource.DERIVED

    def to_dict(self) -> dict:
        return {
            "vulnerability_rating": self.vulnerability_rating,
            "threat_value": self.threat_value,
            "risk_impact": self.risk_impact,
            "criticality": self.criticality.label,
            "criticality_rank": int(self.criticality),
            "vulnerability_source": self.vulnerability_source.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AssessmentResult":
        return cls(
            vulnerability_rating=validate(
                ScaleKind.VULNERABILITY, data["vulnerability_rating"]
            ),
            threat_value=int(data["threat_value"]),
            risk_impact=int(data["risk_impact"]),
            criticality=Criticality.from_label(data["criticality"]),
            vulnerability_source=VulnerabilitySource(
                data.get("vulnerability_source", "derived")
            ),
        )


def round_half_away_from_zero(x: float) -> int:
    """Round with ties going away from zero (2.5 -> 3), unlike built-in round."""
    return math.floor(x + 0.5) if x >= 0 else math.ceil(x - 0.5)


def derive_vulnerability_rating(cia: CiaImpact, exposure: int) -> int:
    """Overall vulnerability rating (1-5) from CIA impacts and exposure.

    The worst CIA component scales the exposure level: with no CIA impact
    the rating is half the exposure, with a critical component it equals
    the exposure. Formally::

        rating = clamp(round(exposure * (0.5 + 0.5 * worst / 4)), 1, 5)

    with half-away-from-zero rounding. The computation below is the same
    formula in exact integer arithmetic, so no float rounding can drift.
    """
    validate(ScaleKind.EXPOSURE, exposure)
    scaled = exposure * (4 + cia.worst)  # == 8 * exposure * (0.5 + 0.5 * worst / 4)
    rating = (scaled + 4) // 8
    return min(5, max(1, rating))


def compute_threat_value(threat_level: int, vulnerability_rating: int) -> int:
    """Threat value: sum of threat level and vulnerability rating (2-10)."""
    validate(ScaleKind.THREAT, threat_level)
    validate(ScaleKind.VULNERABILITY, vulnerability_rating)
    return threat_level + vulnerability_rating


def compute_risk_impact(asset_value: int, threat_value: int, likelihood: int) -> int:
    """Risk impact rating: asset value x threat value x likelihood (2-250)."""
    validate(ScaleKind.ASSET_VALUE, asset_value)
    if not isinstance(threat_value, int) or not 2 <= threat_value <= 10:
        raise OutOfRange(f"threat value must be in [2, 10], got {threat_value!r}")
    validate(ScaleKind.LIKELIHOOD, likelihood)
    return asset_value * threat_value * likelihood


def classify_criticality(
    risk_impact: int, policy: RiskTolerancePolicy = DEFAULT_POLICY
) -> Criticality:
    """Bucket a risk impact score into a criticality level.

    Upper bounds are inclusive: a score equal to ``low_max`` is still Low.
    Scores outside [1, critical_max] raise OutOfPolicyRange.
    """
    if not isinstance(risk_impact, int) or isinstance(risk_impact, bool):
        raise OutOfPolicyRange(f"risk impact must be an integer, got {risk_impact!r}")
    if risk_impact < 1 or risk_impact > policy.critical_max:
        raise OutOfPolicyRange(
            f"risk impact {risk_impact} outside [1, {policy.critical_max}]"
        )
    if risk_impact <= policy.low_max:
        return Criticality.LOW
    if risk_impact <= policy.medium_max:
        return Criticality.MEDIUM
    if risk_impact <= policy.high_max:
        return Criticality.HIGH
    return Criticality.CRITICAL


def suggest_likelihood(annualized_incident_rate: float) -> int:
    """Advisory likelihood rating from an annualized incident rate.

    Bands are order-of-magnitude: 0 incidents/yr suggests 1, up to 0.1
    suggests 2, up to 0.5 suggests 3, up to 2 suggests 4, above that 5.
    The suggestion is never applied automatically; committees decide.
    """
    rate = float(annualized_incident_rate)
    if math.isnan(rate) or rate < 0:
        raise NegativeRate(f"incident rate must be >= 0, got {annualized_incident_rate!r}")
    if rate == 0:
        return 1
    if rate <= 0.1:
        return 2
    if rate <= 0.5:
        return 3
    if rate <= 2:
        return 4
    return 5


def assess(
    asset_value: int,
    threat_level: int,
    cia: CiaImpact,
    exposure: int,
    likelihood: int,
    vulnerability_override: int | None = None,
    policy: RiskTolerancePolicy = DEFAULT_POLICY,
) -> AssessmentResult:
    """Run the full pipeline for one asset/threat/vulnerability triple.

    When ``vulnerability_override`` is given it replaces the derived
    vulnerability rating (a committee re-scoring); CIA and exposure are
    still validated so the record stays well-formed.
    """
    validate(ScaleKind.ASSET_VALUE, asset_value)
    validate(ScaleKind.THREAT, threat_level)
    validate(ScaleKind.EXPOSURE, exposure)
    validate(ScaleKind.LIKELIHOOD, likelihood)

    if vulnerability_override is not None:
        vulnerability_rating = validate(ScaleKind.VULNERABILITY, vulnerability_override)
        source = VulnerabilitySource.DIRECT
    else:
        vulnerability_rating = derive_vulnerability_rating(cia, exposure)
        source = VulnerabilitySource.DERIVED

    threat_value = compute_threat_value(threat_level, vulnerability_rating)
    risk_impact = compute_risk_impact(asset_value, threat_value, likelihood)
    criticality = classify_criticality(risk_impact, policy)
    return AssessmentResult(
        vulnerability_rating=vulnerability_rating,
        threat_value=threat_value,
        risk_impact=risk_impact,
        criticality=criticality,
        vulnerability_source=source,
    )
