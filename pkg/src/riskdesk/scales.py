"""Bounded ordinal rating scales and their label vocabularies.

Every rating in the assessment pipeline lives on one of these scales:
asset value (1-5), threat level (1-5), exposure (1-5), vulnerability
rating (1-5), per-component CIA impact (0-4), likelihood (1-5), and the
four-tier criticality ranking. Labeled scales map bijectively between
rating integers and display labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import OutOfRange, UnknownLabel


class ScaleKind(str, Enum):
    """Names of the rating scales used throughout the register."""

    ASSET_VALUE = "asset_value"
    THREAT = "threat"
    VULNERABILITY = "vulnerability"
    EXPOSURE = "exposure"
    CIA_IMPACT = "cia_impact"
    LIKELIHOOD = "likelihood"
    CRITICALITY = "criticality"


@dataclass(frozen=True)
class Scale:
    """Inclusive integer bounds plus an optional value-to-label mapping."""

    kind: ScaleKind
    lo: int
    hi: int
    labels: dict[int, str] | None = None


_SEVERITY_LABELS = {
    1: "Negligible",
    2: "Low or Minimal",
    3: "Medium",
    4: "High",
    5: "Highest",
}

SCALES: dict[ScaleKind, Scale] = {
    ScaleKind.ASSET_VALUE: Scale(ScaleKind.ASSET_VALUE, 1, 5),
    ScaleKind.THREAT: Scale(
        ScaleKind.THREAT,
        1,
        5,
        {1: "Insignificant", 2: "Minor", 3: "Moderate", 4: "Major", 5: "Catastrophic"},
    ),
    ScaleKind.VULNERABILITY: Scale(ScaleKind.VULNERABILITY, 1, 5, dict(_SEVERITY_LABELS)),
    ScaleKind.EXPOSURE: Scale(ScaleKind.EXPOSURE, 1, 5, dict(_SEVERITY_LABELS)),
    ScaleKind.CIA_IMPACT: Scale(ScaleKind.CIA_IMPACT, 0, 4),
    ScaleKind.LIKELIHOOD: Scale(
        ScaleKind.LIKELIHOOD,
        1,
        5,
        {1: "Very Unlikely", 2: "Unlikely", 3: "Possible", 4: "Likely", 5: "Very Likely"},
    ),
    ScaleKind.CRITICALITY: Scale(
        ScaleKind.CRITICALITY, 1, 4, {1: "Low", 2: "Medium", 3: "High", 4: "Critical"}
    ),
}


def validate(kind: ScaleKind, value: int) -> int:
    """Return ``value`` if it lies on the scale, else raise OutOfRange."""
    scale = SCALES[kind]
    if not isinstance(value, int) or isinstance(value, bool):
        raise OutOfRange(f"{kind.value} must be an integer, got {value!r}")
    if not scale.lo <= value <= scale.hi:
        raise OutOfRange(
            f"{kind.value} must be in [{scale.lo}, {scale.hi}], got {value}"
        )
    return value


def map_label(kind: ScaleKind, value: int) -> str:
    """Display label for a rating on a labeled scale."""
    scale = SCALES[kind]
    validate(kind, value)
    if scale.labels is None:
        raise UnknownLabel(f"scale {kind.value} has no label vocabulary")
    return scale.labels[value]


def unmap_label(kind: ScaleKind, label: str) -> int:
    """Rating integer for a label; matching is case-insensitive."""
    scale = SCALES[kind]
    if scale.labels is None:
        raise UnknownLabel(f"scale {kind.value} has no label vocabulary")
    for value, known in scale.labels.items():
        if known == label:
            return value
    folded = label.strip().lower()
    for value, known in scale.labels.items():
        if known.lower() == folded:
            return value
    raise UnknownLabel(f"{label!r} is not a {kind.value} label")


def parse_rating(kind: ScaleKind, text: str | int) -> int:
    """Accept either a rating integer or its label (e.g. ``4`` or ``Major``)."""
    if isinstance(text, int) and not isinstance(text, bool):
        return validate(kind, text)
    raw = str(text).strip()
    if raw.lstrip("+-").isdigit():
        return validate(kind, int(raw))
    return unmap_label(kind, raw)
