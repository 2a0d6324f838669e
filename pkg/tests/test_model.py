from datetime import date

import pytest

from riskdesk.errors import OutOfRange
from riskdesk.model import (
    Asset,
    AssessmentEntry,
    RemediationEffect,
    RemediationRecord,
    RemediationStatus,
    ThreatRecord,
    VulnerabilityRecord,
)
from riskdesk.scoring import CiaImpact


def test_asset_validates_value():
    with pytest.raises(OutOfRange):
        Asset(id="a", name="x", owner="y", asset_value=0)


def test_ids_must_be_non_empty():
    with pytest.raises(ValueError):
        Asset(id="", name="x", owner="y", asset_value=3)
    with pytest.raises(ValueError):
        Asset(id="  ", name="x", owner="y", asset_value=3)


def test_threat_requires_source_method():
    with pytest.raises(ValueError):
        ThreatRecord(id="t", description="x", source_method="", level=3)


def test_effect_rejects_negative_and_oversized_deltas():
    with pytest.raises(OutOfRange):
        RemediationEffect(delta_confidentiality=-1)
    with pytest.raises(OutOfRange):
        RemediationEffect(delta_exposure=5)
    with pytest.raises(OutOfRange):
        RemediationEffect(sets_override=6)


def test_effect_apply_clamps():
    cia, exposure = RemediationEffect(4, 4, 4, 4).apply(CiaImpact(1, 2, 3), 2)
    assert cia == CiaImpact(0, 0, 0)
    assert exposure == 1
    cia, exposure = RemediationEffect(1, 0, 0, 1).apply(CiaImpact(4, 4, 4), 5)
    assert cia == CiaImpact(3, 4, 4)
    assert exposure == 4


def test_effect_identity():
    assert RemediationEffect().is_identity()
    assert not RemediationEffect(delta_exposure=1).is_identity()
    assert not RemediationEffect(sets_override=3).is_identity()


def test_implemented_remediation_requires_date():
    with pytest.raises(ValueError):
        RemediationRecord(id="r", description="patch", status=RemediationStatus.IMPLEMENTED)
    record = RemediationRecord(
        id="r",
        description="patch",
        status=RemediationStatus.IMPLEMENTED,
        applied_date=date(2026, 1, 1),
    )
    assert record.applied_date == date(2026, 1, 1)


def test_record_dict_round_trips():
    asset = Asset(id="a", name="db", owner="ops", asset_value=4, category="data")
    assert Asset.from_dict(asset.to_dict()) == asset

    threat = ThreatRecord(id="t", description="x", source_method="review", level=2)
    assert ThreatRecord.from_dict(threat.to_dict()) == threat

    vuln = VulnerabilityRecord(
        id="v",
        description="x",
        affected_asset_id="a",
        cia=CiaImpact(1, 2, 3),
        exposure=4,
        rating_override=5,
    )
    assert VulnerabilityRecord.from_dict(vuln.to_dict()) == vuln

    remediation = RemediationRecord(
        id="r",
        description="patch",
        status=RemediationStatus.PLANNED,
        effect=RemediationEffect(1, 0, 2, 1, sets_override=2),
    )
    assert RemediationRecord.from_dict(remediation.to_dict()) == remediation

    entry = AssessmentEntry(
        id="e",
        asset_id="a",
        threat_id="t",
        vulnerability_id="v",
        likelihood=3,
        assessed_date=date(2026, 2, 1),
        remediation_ids=["r"],
    )
    assert AssessmentEntry.from_dict(entry.to_dict()) == entry


def test_entry_validates_likelihood_and_date():
    with pytest.raises(OutOfRange):
        AssessmentEntry(
            id="e",
            asset_id="a",
            threat_id="t",
            vulnerability_id="v",
            likelihood=6,
            assessed_date=date(2026, 1, 1),
        )
    with pytest.raises(ValueError):
        AssessmentEntry.from_dict(
            {
                "id": "e",
                "asset_id": "a",
                "threat_id": "t",
                "vulnerability_id": "v",
                "likelihood": 3,
                "assessed_date": "last tuesday",
            }
        )
