// Async workflows joining the API client and the workspace state.
// Each function takes the current state and returns the next state;
// rendering is left to the caller.

import { ApiClient } from './api.js';
import {
  WorkspaceState,
  adoptSnapshot,
  assessRequest,
  clearConflict,
  clearEdits,
  effectiveRecords,
  entryById,
  hasErrors,
  selectEntry,
  setConflict,
} from './state.js';
import { ApiError, EffectDoc, RecordKind, VulnerabilityDoc } from './types.js';

export async function refresh(api: ApiClient, state: WorkspaceState): Promise<WorkspaceState> {
  const doc = await api.getRegister();
  return adoptSnapshot(state, doc);
}

/** Ask the service to score the staged inputs of one entry. Skipped
 * entirely while any staged value is out of range. */
export async function previewEntry(
  api: ApiClient,
  state: WorkspaceState,
  entryId: string,
): Promise<WorkspaceState> {
  if (hasErrors(state, entryId)) return state;
  const request = assessRequest(state, entryId);
  if (!request) return state;
  const score = await api.assess(request);
  return { ...state, previews: { ...state.previews, [entryId]: score } };
}

function conflictState(state: WorkspaceState, error: ApiError): WorkspaceState {
  return setConflict(state, {
    expectedVersion: error.detail?.expected_version ?? state.version,
    actualVersion: error.detail?.actual_version ?? state.version,
  });
}

/** Persist one entry's staged edits as a sequence of record updates,
 * each guarded by the version returned by the previous one. On a
 * version conflict the staged edits are kept and the conflict recorded. */
export async function saveEntry(
  api: ApiClient,
  state: WorkspaceState,
  entryId: string,
): Promise<WorkspaceState> {
  if (hasErrors(state, entryId)) return state;
  const snapshot = state.snapshot;
  const entry = entryById(state, entryId);
  const joined = effectiveRecords(state, entryId);
  const edits = state.pendingEdits[entryId] ?? {};
  if (!snapshot || !entry || !joined || Object.keys(edits).length === 0) return state;

  const asset = snapshot.assets.find((a) => a.id === entry.asset_id)!;
  const threat = snapshot.threats.find((t) => t.id === entry.threat_id)!;
  const vuln = snapshot.vulnerabilities.find((v) => v.id === entry.vulnerability_id)!;

  const updates: Array<{ kind: RecordKind; record: unknown }> = [];
  if (edits.asset_value !== undefined) {
    updates.push({ kind: 'asset', record: { ...asset, asset_value: joined.assetValue } });
  }
  if (edits.threat_level !== undefined) {
    updates.push({ kind: 'threat', record: { ...threat, level: joined.threatLevel } });
  }
  if (
    edits.impact_c !== undefined ||
    edits.impact_i !== undefined ||
    edits.impact_a !== undefined ||
    edits.exposure !== undefined
  ) {
    updates.push({
      kind: 'vulnerability',
      record: {
        ...vuln,
        cia: {
          confidentiality: joined.impactC,
          integrity: joined.impactI,
          availability: joined.impactA,
        },
        exposure: joined.exposure,
      },
    });
  }
  if (edits.likelihood !== undefined) {
    updates.push({ kind: 'entry', record: { ...entry, likelihood: joined.likelihood } });
  }

  let version = state.version;
  try {
    for (const update of updates) {
      const result = await api.putRecord(update.kind, update.record, version);
      version = result.version;
    }
  } catch (error) {
    if (error instanceof ApiError && error.code === 'Conflict') {
      return conflictState(state, error);
    }
    throw error;
  }
  const saved = clearEdits(clearConflict(state), entryId);
  return refresh(api, saved);
}

/** Run a remediation effect through the service's simulator. */
export async function runWhatIf(
  api: ApiClient,
  state: WorkspaceState,
  effect: EffectDoc,
): Promise<WorkspaceState> {
  const entryId = state.selectedEntryId;
  if (!entryId) return state;
  try {
    const delta = await api.whatif(entryId, effect);
    return { ...state, activeEffect: effect, lastDelta: delta };
  } catch (error) {
    if (error instanceof ApiError && error.code === 'NotFound') {
      // Entry vanished under us (deleted or renamed): reset the panel.
      return selectEntry(state, null);
    }
    throw error;
  }
}

function isoToday(): string {
  return new Date().toISOString().slice(0, 10);
}

function mintRemediationId(state: WorkspaceState): string {
  const taken = new Set((state.snapshot?.remediations ?? []).map((r) => r.id));
  let n = taken.size + 1;
  while (taken.has(`r-web-${String(n).padStart(4, '0')}`)) n += 1;
  return `r-web-${String(n).padStart(4, '0')}`;
}

/** Commit the active what-if effect: record an implemented remediation,
 * update the vulnerability it changes, and link it to the entry. The
 * resulting scores are whatever the service recomputes. */
export async function applyEffect(
  api: ApiClient,
  state: WorkspaceState,
  description: string,
): Promise<WorkspaceState> {
  const entryId = state.selectedEntryId;
  const snapshot = state.snapshot;
  const entry = entryId ? entryById(state, entryId) : null;
  if (!entryId || !snapshot || !entry) return state;
  const vuln = snapshot.vulnerabilities.find((v) => v.id === entry.vulnerability_id);
  if (!vuln) return state;
  const effect = state.activeEffect;

  const clamp0 = (x: number) => Math.max(0, x);
  const newVuln: VulnerabilityDoc = {
    ...vuln,
    cia: {
      confidentiality: clamp0(vuln.cia.confidentiality - (effect.delta_confidentiality ?? 0)),
      integrity: clamp0(vuln.cia.integrity - (effect.delta_integrity ?? 0)),
      availability: clamp0(vuln.cia.availability - (effect.delta_availability ?? 0)),
    },
    exposure: Math.max(1, vuln.exposure - (effect.delta_exposure ?? 0)),
  };
  if (effect.sets_override !== undefined) {
    newVuln.rating_override = effect.sets_override;
  }

  const remediationId = mintRemediationId(state);
  const remediation = {
    id: remediationId,
    description,
    status: 'Implemented',
    effect,
    applied_date: isoToday(),
  };
  const newEntry = {
    ...entry,
    remediation_ids: [...entry.remediation_ids, remediationId],
  };

  let version = state.version;
  try {
    for (const update of [
      { kind: 'remediation' as RecordKind, record: remediation },
      { kind: 'vulnerability' as RecordKind, record: newVuln },
      { kind: 'entry' as RecordKind, record: newEntry },
    ]) {
      const result = await api.putRecord(update.kind, update.record, version);
      version = result.version;
    }
  } catch (error) {
    if (error instanceof ApiError && error.code === 'Conflict') {
      return conflictState(state, error);
    }
    throw error;
  }
  const committed = { ...clearConflict(state), activeEffect: {}, lastDelta: null };
  return refresh(api, committed);
}
