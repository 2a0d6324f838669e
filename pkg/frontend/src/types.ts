// Payload shapes exchanged with the register service. These mirror the
// server's JSON documents; the UI never invents values for any of them.

export interface CiaDoc {
  confidentiality: number;
  integrity: number;
  availability: number;
}

export interface AssetDoc {
  id: string;
  name: string;
  owner: string;
  asset_value: number;
  category?: string;
  valuation_rationale?: string;
}

export interface ThreatDoc {
  id: string;
  description: string;
  source_method: string;
  level: number;
}

export interface VulnerabilityDoc {
  id: string;
  description: string;
  affected_asset_id: string;
  cia: CiaDoc;
  exposure: number;
  rating_override?: number | null;
}

export interface RemediationDoc {
  id: string;
  description: string;
  status: string;
  effect?: EffectDoc;
  applied_date?: string | null;
}

export interface ScoreDoc {
  vulnerability_rating: number;
  threat_value: number;
  risk_impact: number;
  criticality: string;
  criticality_rank: number;
  vulnerability_source: string;
}

export interface EntryDoc {
  id: string;
  asset_id: string;
  threat_id: string;
  vulnerability_id: string;
  likelihood: number;
  assessed_date: string;
  remediation_ids: string[];
  computed: ScoreDoc | null;
  needs_recompute: boolean;
  phase?: string;
}

export interface RegisterDoc {
  document: string;
  version: number;
  review_period_days: number;
  policy: { low_max: number; medium_max: number; high_max: number; critical_max: number };
  metadata: Record<string, string>;
  assets: AssetDoc[];
  threats: ThreatDoc[];
  vulnerabilities: VulnerabilityDoc[];
  remediations: RemediationDoc[];
  entries: EntryDoc[];
}

export interface EffectDoc {
  delta_confidentiality?: number;
  delta_integrity?: number;
  delta_availability?: number;
  delta_exposure?: number;
  sets_override?: number | null;
}

export interface RiskDeltaDoc {
  entry_id: string;
  before: ScoreDoc;
  after: ScoreDoc;
  ri_reduction: number;
  criticality_change: number;
}

export interface AssessRequest {
  asset_value: number;
  threat_level: number;
  cia: CiaDoc;
  exposure: number;
  likelihood: number;
  override?: number | null;
}

export interface ApiErrorBody {
  code: 'NotFound' | 'Conflict' | 'Validation' | 'Internal';
  message: string;
  detail?: { expected_version?: number; actual_version?: number } | null;
}

export class ApiError extends Error {
  readonly code: ApiErrorBody['code'];
  readonly detail: ApiErrorBody['detail'];

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.code = body.code;
    this.detail = body.detail ?? null;
  }
}

export type RecordKind = 'asset' | 'threat' | 'vulnerability' | 'remediation' | 'entry';
