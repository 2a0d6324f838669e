"""riskdesk: IT and cybersecurity risk assessment engine and register.

Scores findings on ordinal scales (asset value, threat level, CIA impacts,
exposure, likelihood), classifies risk impact into criticality levels under
a configurable tolerance policy, and keeps everything in a versioned
register with reporting, what-if simulation, a CLI, and an HTTP API.
"""

from .errors import (
    ConflictError,
    DuplicateEntry,
    FutureDateError,
    HeaderMismatch,
    InconsistentRegister,
    IntegrityError,
    IoError,
    NotFound,
    NotImplementedStatus,
    OutOfPolicyRange,
    OutOfRange,
    ParseError,
    RiskdeskError,
    RowError,
    UnknownEntry,
    UnknownLabel,
)
from .model import (
    Asset,
    AssessmentEntry,
    Phase,
    RemediationEffect,
    RemediationRecord,
    RemediationStatus,
    ThreatRecord,
    VulnerabilityRecord,
)
from .register import (
    RiskRegister,
    StaleEntry,
    flag_stale,
    load_register,
    new_register,
    recompute_all,
    save_register,
    upsert,
    upsert_and_recompute,
)
from .register_csv import export_csv, import_csv
from .reporting import (
    MatrixDocument,
    ReportFormat,
    SummaryStats,
    render_matrix,
    render_prioritized,
    summarize,
)
from .scales import ScaleKind, map_label, parse_rating, unmap_label, validate
from .scenario import (
    PortfolioResult,
    PortfolioSummary,
    RiskDelta,
    commit_effect,
    rank_remediations,
    simulate,
    simulate_portfolio,
)
from .scoring import (
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
    suggest_likelihood,
)

__version__ = "0.1.0"

__all__ = [
    "Asset",
    "AssessmentEntry",
    "AssessmentResult",
    "CiaImpact",
    "ConflictError",
    "Criticality",
    "DuplicateEntry",
    "FutureDateError",
    "HeaderMismatch",
    "InconsistentRegister",
    "IntegrityError",
    "IoError",
    "MatrixDocument",
    "NotFound",
    "NotImplementedStatus",
    "OutOfPolicyRange",
    "OutOfRange",
    "ParseError",
    "Phase",
    "PortfolioResult",
    "PortfolioSummary",
    "RemediationEffect",
    "RemediationRecord",
    "RemediationStatus",
    "ReportFormat",
    "RiskDelta",
    "RiskRegister",
    "RiskTolerancePolicy",
    "RiskdeskError",
    "RowError",
    "ScaleKind",
    "StaleEntry",
    "SummaryStats",
    "ThreatRecord",
    "UnknownEntry",
    "UnknownLabel",
    "VulnerabilityRecord",
    "VulnerabilitySource",
    "assess",
    "classify_criticality",
    "commit_effect",
    "compute_risk_impact",
    "compute_threat_value",
    "derive_vulnerability_rating",
    "export_csv",
    "flag_stale",
    "import_csv",
    "load_register",
    "map_label",
    "new_register",
    "parse_rating",
    "rank_remediations",
    "recompute_all",
    "render_matrix",
    "render_prioritized",
    "save_register",
    "simulate",
    "simulate_portfolio",
    "suggest_likelihood",
    "summarize",
    "unmap_label",
    "upsert",
    "upsert_and_recompute",
    "validate",
]
