// Workspace state and its pure update helpers. All functions return new
// state objects; nothing here talks to the network or the DOM.

import { Field, rangeError } from './scales.js';
import {
  AssessRequest,
  EffectDoc,
  EntryDoc,
  RegisterDoc,
  RiskDeltaDoc,
  ScoreDoc,
} from './types.js';

export type EditableField = Field;

export interface Conflict {
  expectedVersion: number;
  actualVersion: number;
}

export interface WorkspaceState {
  snapshot: RegisterDoc | null;
  version: number;
  selectedEntryId: string | null;
  /** Staged, not-yet-saved cell edits, keyed by entry id. */
  pendingEdits: Record<string, Partial<Record<EditableField, number>>>;
  /** Inline validation failures for staged values, keyed by entry id. */
  fieldErrors: Record<string, Partial<Record<EditableField, string>>>;
  /** Optimistic previews: the last /assess response per edited entry. */
  previews: Record<string, ScoreDoc>;
  activeEffect: EffectDoc;
  lastDelta: RiskDeltaDoc | null;
  conflict: Conflict | null;
  statusMessage: string;
}

export function initialState(): WorkspaceState {
  return {
    snapshot: null,
    version: -1,
    selectedEntryId: null,
    pendingEdits: {},
    fieldErrors: {},
    previews: {},
    activeEffect: {},
    lastDelta: null,
    conflict: null,
    statusMessage: '',
  };
}

/** Adopt a fresh server snapshot. Staged edits survive on purpose: a
 * refresh (for example after a conflict) must never drop user input. */
export function adoptSnapshot(state: WorkspaceState, doc: RegisterDoc): WorkspaceState {
  return { ...state, snapshot: doc, version: doc.version };
}

export function selectEntry(state: WorkspaceState, entryId: string | null): WorkspaceState {
  return { ...state, selectedEntryId: entryId, lastDelta: null, activeEffect: {} };
}

export function stageEdit(
  state: WorkspaceState,
  entryId: string,
  field: EditableField,
  value: number,
): WorkspaceState {
  const error = rangeError(field, value);
  const entryEdits = { ...(state.pendingEdits[entryId] ?? {}), [field]: value };
  const entryErrors = { ...(state.fieldErrors[entryId] ?? {}) };
  if (error) {
    entryErrors[field] = error;
  } else {
    delete entryErrors[field];
  }
  return {
    ...state,
    pendingEdits: { ...state.pendingEdits, [entryId]: entryEdits },
    fieldErrors: { ...state.fieldErrors, [entryId]: entryErrors },
  };
}

export function clearEdits(state: WorkspaceState, entryId: string): WorkspaceState {
  const pendingEdits = { ...state.pendingEdits };
  const fieldErrors = { ...state.fieldErrors };
  const previews = { ...state.previews };
  delete pendingEdits[entryId];
  delete fieldErrors[entryId];
  delete previews[entryId];
  return { ...state, pendingEdits, fieldErrors, previews };
}

export function setConflict(state: WorkspaceState, conflict: Conflict): WorkspaceState {
  return { ...state, conflict };
}

export function clearConflict(state: WorkspaceState): WorkspaceState {
  return { ...state, conflict: null };
}

export function hasErrors(state: WorkspaceState, entryId: string): boolean {
  return Object.keys(state.fieldErrors[entryId] ?? {}).length > 0;
}

export function entryById(state: WorkspaceState, entryId: string): EntryDoc | null {
  return state.snapshot?.entries.find((e) => e.id === entryId) ?? null;
}

interface JoinedRecords {
  assetValue: number;
  assetName: string;
  owner: string;
  threatLevel: number;
  threatText: string;
  impactC: number;
  impactI: number;
  impactA: number;
  exposure: number;
  override: number | null;
  likelihood: number;
}

/** Entry joined across its referenced records, with staged edits applied. */
export function effectiveRecords(
  state: WorkspaceState,
  entryId: string,
): JoinedRecords | null {
  const snapshot = state.snapshot;
  const entry = entryById(state, entryId);
  if (!snapshot || !entry) return null;
  const asset = snapshot.assets.find((a) => a.id === entry.asset_id);
  const threat = snapshot.threats.find((t) => t.id === entry.threat_id);
  const vuln = snapshot.vulnerabilities.find((v) => v.id === entry.vulnerability_id);
  if (!asset || !threat || !vuln) return null;
  const edits = state.pendingEdits[entryId] ?? {};
  return {
    assetValue: edits.asset_value ?? asset.asset_value,
    assetName: asset.name,
    owner: asset.owner,
    threatLevel: edits.threat_level ?? threat.level,
    threatText: threat.description,
    impactC: edits.impact_c ?? vuln.cia.confidentiality,
    impactI: edits.impact_i ?? vuln.cia.integrity,
    impactA: edits.impact_a ?? vuln.cia.availability,
    exposure: edits.exposure ?? vuln.exposure,
    override: vuln.rating_override ?? null,
    likelihood: edits.likelihood ?? entry.likelihood,
  };
}

/** The /assess request body for an entry's current (staged) inputs. */
export function assessRequest(state: WorkspaceState, entryId: string): AssessRequest | null {
  const joined = effectiveRecords(state, entryId);
  if (!joined) return null;
  return {
    asset_value: joined.assetValue,
    threat_level: joined.threatLevel,
    cia: {
      confidentiality: joined.impactC,
      integrity: joined.impactI,
      availability: joined.impactA,
    },
    exposure: joined.exposure,
    likelihood: joined.likelihood,
    override: joined.override,
  };
}
