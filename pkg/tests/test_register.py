import json
from datetime import date

import pytest

from riskdesk.errors import (
    ConflictError,
    FutureDateError,
    IntegrityError,
    NotFound,
    ParseError,
)
from riskdesk.model import Asset, AssessmentEntry, ThreatRecord, VulnerabilityRecord
from riskdesk.register import (
    dumps,
    flag_stale,
    load_register,
    loads,
    new_register,
    recompute_all,
    save_register,
    upsert,
    upsert_and_recompute,
)
from riskdesk.scoring import CiaImpact

from conftest import WORKED_DATE, build_worked_register


def test_new_register_starts_empty_at_version_zero():
    register = new_register()
    assert register.version == 0
    assert register.entries == {}
    assert register.review_period_days == 183


def test_upsert_inserts_and_bumps_version():
    register = new_register()
    updated = upsert(register, Asset(id="web-01", name="Web", owner="ops", asset_value=3))
    assert "web-01" in updated.assets
    assert updated.version == 1
    assert register.version == 0  # original untouched


def test_upsert_rejects_dangling_reference():
    register = new_register()
    with pytest.raises(IntegrityError) as excinfo:
        upsert(
            register,
            VulnerabilityRecord(
                id="v1",
                description="x",
                affected_asset_id="ghost",
                cia=CiaImpact(1, 1, 1),
                exposure=2,
            ),
        )
    assert "ghost" in str(excinfo.value)


def test_threat_edit_flags_dependent_entries(worked_register):
    updated = upsert(
        worked_register,
        ThreatRecord(id="t1", description="SQL injection", source_method="pentest", level=3),
    )
    assert updated.entries["e1"].needs_recompute
    recomputed = recompute_all(updated)
    assert recomputed.entries["e1"].computed.threat_value == 8
    assert recomputed.version == updated.version + 1


def test_unrelated_edit_does_not_flag(worked_register):
    updated = upsert(
        worked_register,
        ThreatRecord(
            id="t1", description="SQL injection (reworded)", source_method="pentest", level=4
        ),
    )
    assert not updated.entries["e1"].needs_recompute
    assert recompute_all(updated) is updated  # nothing to do


def test_recompute_is_noop_on_consistent_register(worked_register):
    assert recompute_all(worked_register) is worked_register


def test_upsert_and_recompute_is_single_commit(worked_register):
    updated = upsert_and_recompute(
        worked_register,
        ThreatRecord(id="t1", description="SQL injection", source_method="pentest", level=5),
    )
    assert updated.version == worked_register.version + 1
    assert updated.entries["e1"].computed.threat_value == 10
    assert not updated.entries["e1"].needs_recompute


def test_save_load_round_trip(tmp_path, worked_register):
    path = tmp_path / "register.json"
    save_register(worked_register, path)
    loaded = load_register(path)
    assert loaded == worked_register
    assert dumps(loaded) == dumps(worked_register)


def test_save_is_byte_deterministic(tmp_path, worked_register):
    first = dumps(worked_register)
    second = dumps(worked_register)
    assert first == second
    assert first.endswith("\n")
    path = tmp_path / "register.json"
    save_register(worked_register, path)
    assert path.read_text(encoding="utf-8") == first


def test_load_missing_file_raises_not_found(tmp_path):
    with pytest.raises(NotFound):
        load_register(tmp_path / "absent.json")


def test_load_rejects_malformed_json():
    with pytest.raises(ParseError) as excinfo:
        loads("{not json")
    assert excinfo.value.position.startswith("line")


def test_load_rejects_wrong_document_kind():
    with pytest.raises(ParseError):
        loads(json.dumps({"document": "shopping-list"}))


def test_load_rejects_duplicate_ids(worked_register):
    doc = json.loads(dumps(worked_register))
    doc["assets"].append(doc["assets"][0])
    with pytest.raises(ParseError) as excinfo:
        loads(json.dumps(doc))
    assert "duplicate" in str(excinfo.value)


def test_load_rejects_dangling_reference(worked_register):
    doc = json.loads(dumps(worked_register))
    doc["assets"] = []
    doc["vulnerabilities"] = []
    with pytest.raises(IntegrityError) as excinfo:
        loads(json.dumps(doc))
    dangling = excinfo.value.dangling
    assert any("e1" in item for item in dangling)


def test_load_rejects_stale_score_without_flag(worked_register):
    doc = json.loads(dumps(worked_register))
    for entry in doc["entries"]:
        entry["likelihood"] = 5  # score no longer matches, flag still clear
    with pytest.raises(ParseError) as excinfo:
        loads(json.dumps(doc))
    assert "needs_recompute" in str(excinfo.value)


def test_load_accepts_flagged_entries(worked_register):
    doc = json.loads(dumps(worked_register))
    for entry in doc["entries"]:
        entry["likelihood"] = 5
        entry["needs_recompute"] = True
    register = loads(json.dumps(doc))
    assert register.entries["e1"].needs_recompute
    recomputed = recompute_all(register)
    assert recomputed.entries["e1"].computed.risk_impact == 180


def test_save_conflict_detection(tmp_path, worked_register):
    path = tmp_path / "register.json"
    save_register(worked_register, path)
    other = upsert(worked_register, Asset(id="a9", name="N", owner="o", asset_value=1))
    save_register(other, path, expected_version=worked_register.version)
    with pytest.raises(ConflictError) as excinfo:
        save_register(other, path, expected_version=worked_register.version)
    assert excinfo.value.expected_version == worked_register.version
    assert excinfo.value.actual_version == other.version


def test_flag_stale_boundary():
    register = build_worked_register()
    on_boundary = date(2026, 7, 12)  # exactly 183 days after 2026-01-10
    assert flag_stale(register, on_boundary) == []
    just_past = date(2026, 7, 13)  # 184 days
    stale = flag_stale(register, just_past)
    assert [(item.entry_id, item.days_since_assessment) for item in stale] == [("e1", 184)]


def test_flag_stale_sorts_most_stale_first(worked_register):
    register = upsert(worked_register, Asset(id="a2", name="X", owner="o", asset_value=1))
    register = upsert(
        register, ThreatRecord(id="t2", description="y", source_method="m", level=1)
    )
    register = upsert(
        register,
        VulnerabilityRecord(
            id="v2", description="z", affected_asset_id="a2", cia=CiaImpact(1, 1, 1), exposure=1
        ),
    )
    register = upsert(
        register,
        AssessmentEntry(
            id="e0",
            asset_id="a2",
            threat_id="t2",
            vulnerability_id="v2",
            likelihood=1,
            assessed_date=date(2025, 6, 1),
        ),
    )
    register = recompute_all(register)
    stale = flag_stale(register, date(2026, 8, 13))
    assert [item.entry_id for item in stale] == ["e0", "e1"]
    assert stale[0].days_since_assessment > stale[1].days_since_assessment


def test_flag_stale_rejects_future_assessments(worked_register):
    with pytest.raises(FutureDateError):
        flag_stale(worked_register, WORKED_DATE.replace(day=1))
