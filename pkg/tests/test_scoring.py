"""Scoring pipeline tests.

The bucket counts and derivation table below were produced by an
independent brute-force enumeration written before this package and are
frozen here as constants; the suite asserts the engine reproduces them.
"""

import math

import pytest

from riskdesk.errors import NegativeRate, OutOfPolicyRange, OutOfRange
from riskdesk.scoring import (
    AssessmentResult,
    CiaImpact,
    Criticality,
    RiskTolerancePolicy,
    VulnerabilitySource,
    assess,
    classify_criticality,
    compute_risk_impact,
    compute_threat_value,
    derive_vulnerability_rating,
    round_half_away_from_zero,
    suggest_likelihood,
)

# Frozen oracle results over all 625 (av, tl, vl, lh) combinations.
ORACLE_MIN_RI = 2
ORACLE_MAX_RI = 250
ORACLE_BUCKETS = {"Low": 343, "Medium": 184, "High": 90, "Critical": 8}


def test_golden_case():
    result = assess(
        asset_value=4, threat_level=4, cia=CiaImpact(4, 4, 4), exposure=5, likelihood=4
    )
    assert result == AssessmentResult(
        vulnerability_rating=5,
        threat_value=9,
        risk_impact=144,
        criticality=Criticality.HIGH,
        vulnerability_source=VulnerabilitySource.DERIVED,
    )


def test_round_half_away_from_zero():
    assert round_half_away_from_zero(2.5) == 3
    assert round_half_away_from_zero(3.5) == 4
    assert round_half_away_from_zero(2.4) == 2
    assert round_half_away_from_zero(-2.5) == -3


def test_derive_matches_real_arithmetic_everywhere():
    for worst in range(5):
        for exposure in range(1, 6):
            cia = CiaImpact(worst, 0, 0)
            expected = round_half_away_from_zero(exposure * (0.5 + 0.5 * worst / 4))
            expected = min(5, max(1, expected))
            assert derive_vulnerability_rating(cia, exposure) == expected


def test_derive_uses_worst_component():
    assert derive_vulnerability_rating(CiaImpact(4, 0, 0), 5) == 5
    assert derive_vulnerability_rating(CiaImpact(0, 4, 0), 5) == 5
    assert derive_vulnerability_rating(CiaImpact(0, 0, 4), 5) == 5
    assert derive_vulnerability_rating(CiaImpact(0, 0, 0), 5) == 3


def test_derive_floor_is_one():
    assert derive_vulnerability_rating(CiaImpact(0, 0, 0), 1) == 1


def test_threat_value_range_and_examples():
    assert compute_threat_value(4, 5) == 9
    assert compute_threat_value(1, 1) == 2
    assert compute_threat_value(5, 5) == 10
    with pytest.raises(OutOfRange):
        compute_threat_value(0, 5)
    with pytest.raises(OutOfRange):
        compute_threat_value(3, 6)


def test_risk_impact_examples():
    assert compute_risk_impact(4, 9, 4) == 144
    assert compute_risk_impact(1, 2, 1) == 2
    assert compute_risk_impact(5, 10, 5) == 250
    with pytest.raises(OutOfRange):
        compute_risk_impact(4, 1, 4)  # threat value below its floor of 2
    with pytest.raises(OutOfRange):
        compute_risk_impact(4, 11, 4)


def test_classification_boundaries():
    assert classify_criticality(1) is Criticality.LOW
    assert classify_criticality(45) is Criticality.LOW
    assert classify_criticality(46) is Criticality.MEDIUM
    assert classify_criticality(99) is Criticality.MEDIUM
    assert classify_criticality(100) is Criticality.HIGH
    assert classify_criticality(199) is Criticality.HIGH
    assert classify_criticality(200) is Criticality.CRITICAL
    assert classify_criticality(250) is Criticality.CRITICAL


def test_classification_rejects_outside_policy():
    with pytest.raises(OutOfPolicyRange):
        classify_criticality(0)
    with pytest.raises(OutOfPolicyRange):
        classify_criticality(251)


def test_custom_policy_shifts_buckets():
    policy = RiskTolerancePolicy(low_max=10, medium_max=50, high_max=150, critical_max=250)
    assert classify_criticality(45, policy) is Criticality.MEDIUM
    assert classify_criticality(151, policy) is Criticality.CRITICAL


def test_policy_ordering_enforced():
    with pytest.raises(OutOfPolicyRange):
        RiskTolerancePolicy(low_max=99, medium_max=45, high_max=199, critical_max=250)
    with pytest.raises(OutOfPolicyRange):
        RiskTolerancePolicy(low_max=45, medium_max=99, high_max=199, critical_max=249)
    with pytest.raises(OutOfPolicyRange):
        RiskTolerancePolicy(low_max=0, medium_max=99, high_max=199, critical_max=250)


def test_oracle_bucket_counts():
    counts = {level.label: 0 for level in Criticality}
    seen_min, seen_max = 251, 0
    for av in range(1, 6):
        for tl in range(1, 6):
            for vl in range(1, 6):
                for lh in range(1, 6):
                    ri = compute_risk_impact(av, compute_threat_value(tl, vl), lh)
                    assert ri == av * (tl + vl) * lh
                    counts[classify_criticality(ri).label] += 1
                    seen_min = min(seen_min, ri)
                    seen_max = max(seen_max, ri)
    assert seen_min == ORACLE_MIN_RI
    assert seen_max == ORACLE_MAX_RI
    assert counts == ORACLE_BUCKETS


def test_suggest_likelihood_bands():
    assert suggest_likelihood(0.0) == 1
    assert suggest_likelihood(0.05) == 2
    assert suggest_likelihood(0.1) == 2
    assert suggest_likelihood(0.2) == 3
    assert suggest_likelihood(0.5) == 3
    assert suggest_likelihood(1.0) == 4
    assert suggest_likelihood(2.0) == 4
    assert suggest_likelihood(2.1) == 5
    assert suggest_likelihood(100.0) == 5


def test_suggest_likelihood_rejects_bad_rates():
    with pytest.raises(NegativeRate):
        suggest_likelihood(-0.1)
    with pytest.raises(NegativeRate):
        suggest_likelihood(math.nan)


def test_assess_override_changes_source():
    derived = assess(
        asset_value=4, threat_level=4, cia=CiaImpact(4, 4, 4), exposure=5, likelihood=4
    )
    direct = assess(
        asset_value=4,
        threat_level=4,
        cia=CiaImpact(4, 4, 4),
        exposure=5,
        likelihood=4,
        vulnerability_override=2,
    )
    assert derived.vulnerability_source is VulnerabilitySource.DERIVED
    assert direct.vulnerability_source is VulnerabilitySource.DIRECT
    assert direct.vulnerability_rating == 2
    assert direct.threat_value == 6
    assert direct.risk_impact == 96


def test_assess_result_dict_round_trip():
    result = assess(
        asset_value=4, threat_level=4, cia=CiaImpact(4, 4, 4), exposure=5, likelihood=4
    )
    assert AssessmentResult.from_dict(result.to_dict()) == result


def test_cia_impact_validates_components():
    with pytest.raises(OutOfRange):
        CiaImpact(5, 0, 0)
    with pytest.raises(OutOfRange):
        CiaImpact(0, -1, 0)
    assert CiaImpact(1, 2, 3).worst == 3
