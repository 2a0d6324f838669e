"""Shared fixtures plus the acceptance summary hook.

Acceptance tests are named test_criterion_<n>_<slug>; after a run that
included any of them, one PASS/FAIL line per criterion is printed so the
suite's verdict is readable without scrolling through pytest output.
"""

from __future__ import annotations

import re
from datetime import date

import pytest

from riskdesk.model import Asset, AssessmentEntry, ThreatRecord, VulnerabilityRecord
from riskdesk.register import RiskRegister, new_register, recompute_all, upsert
from riskdesk.scoring import CiaImpact

WORKED_DATE = date(2026, 1, 10)


def build_worked_register() -> RiskRegister:
    """One-entry register holding the golden case: AV=4, TL=4, CIA all 4,
    exposure 5, likelihood 4 — scores vr=5 tv=9 ri=144 High."""
    register = new_register()
    register = upsert(
        register, Asset(id="a1", name="Customer database", owner="IT Ops", asset_value=4)
    )
    register = upsert(
        register,
        ThreatRecord(id="t1", description="SQL injection", source_method="pentest", level=4),
    )
    register = upsert(
        register,
        VulnerabilityRecord(
            id="v1",
            description="Unpatched ORM",
            affected_asset_id="a1",
            cia=CiaImpact(4, 4, 4),
            exposure=5,
        ),
    )
    register = upsert(
        register,
        AssessmentEntry(
            id="e1",
            asset_id="a1",
            threat_id="t1",
            vulnerability_id="v1",
            likelihood=4,
            assessed_date=WORKED_DATE,
        ),
    )
    return recompute_all(register)


def build_mixed_register() -> RiskRegister:
    """Three entries landing in Low, Medium, and High (ri 30, 80, 144)."""
    register = build_worked_register()
    register = upsert(
        register, Asset(id="a2", name="Mail relay", owner="IT Ops", asset_value=2)
    )
    register = upsert(
        register,
        ThreatRecord(id="t2", description="Spam flood", source_method="history", level=3),
    )
    # exposure 3 with worst CIA 1 derives rating 2 -> tv 5, ri 2*5*3 = 30
    register = upsert(
        register,
        VulnerabilityRecord(
            id="v2",
            description="Open relay misconfig",
            affected_asset_id="a2",
            cia=CiaImpact(0, 1, 1),
            exposure=3,
        ),
    )
    register = upsert(
        register,
        AssessmentEntry(
            id="e2",
            asset_id="a2",
            threat_id="t2",
            vulnerability_id="v2",
            likelihood=3,
            assessed_date=WORKED_DATE,
        ),
    )
    register = upsert(
        register, Asset(id="a3", name="HR portal", owner="People", asset_value=4)
    )
    register = upsert(
        register,
        ThreatRecord(id="t3", description="Credential stuffing", source_method="intel", level=3),
    )
    # exposure 3 with worst CIA 2 derives rating 2 -> tv 5, ri 4*5*4 = 80
    register = upsert(
        register,
        VulnerabilityRecord(
            id="v3",
            description="No MFA on legacy login",
            affected_asset_id="a3",
            cia=CiaImpact(2, 1, 0),
            exposure=3,
        ),
    )
    register = upsert(
        register,
        AssessmentEntry(
            id="e3",
            asset_id="a3",
            threat_id="t3",
            vulnerability_id="v3",
            likelihood=4,
            assessed_date=WORKED_DATE,
        ),
    )
    return recompute_all(register)


@pytest.fixture
def worked_register() -> RiskRegister:
    return build_worked_register()


@pytest.fixture
def mixed_register() -> RiskRegister:
    return build_mixed_register()


# ---------------------------------------------------------------------------
# Acceptance summary
# ---------------------------------------------------------------------------

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match or report.when != "call":
        return
    number = int(match.group(1))
    title = match.group(2).replace("_", " ")
    _results[number] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, passed = _results[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} — {title}")
