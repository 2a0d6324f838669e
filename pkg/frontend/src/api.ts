// Thin typed client for the register service. The fetch implementation is
// injectable so tests can substitute a scripted server.

import {
  ApiError,
  ApiErrorBody,
  AssessRequest,
  EffectDoc,
  RecordKind,
  RegisterDoc,
  RiskDeltaDoc,
  ScoreDoc,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ApiError> {
  let body: { error?: ApiErrorBody } = {};
  try {
    body = await response.json();
  } catch {
    // non-JSON error body; fall through to a generic error
  }
  return new ApiError(
    body.error ?? { code: 'Internal', message: `HTTP ${response.status}` },
  );
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  getRegister(): Promise<RegisterDoc> {
    return this.request<RegisterDoc>('/register');
  }

  putRecord(
    kind: RecordKind,
    record: unknown,
    expectedVersion: number,
  ): Promise<{ version: number }> {
    return this.request<{ version: number }>('/register/records', {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ kind, record, expected_version: expectedVersion }),
    });
  }

  assess(inputs: AssessRequest): Promise<ScoreDoc> {
    return this.request<ScoreDoc>('/assess', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(inputs),
    });
  }

  whatif(entryId: string, effect: EffectDoc): Promise<RiskDeltaDoc> {
    return this.request<RiskDeltaDoc>('/whatif', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ entry_id: entryId, effect }),
    });
  }

  async report(format: string, view: string): Promise<string> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/report?format=${encodeURIComponent(format)}&view=${encodeURIComponent(view)}`,
    );
    if (!response.ok) {
      throw await parseError(response);
    }
    return response.text();
  }

  staleness(today?: string): Promise<{
    today: string;
    review_period_days: number;
    stale: { entry_id: string; days_since_assessment: number }[];
  }> {
    const query = today ? `?today=${encodeURIComponent(today)}` : '';
    return this.request(`/staleness${query}`);
  }
}
