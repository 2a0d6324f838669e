// Register grid renderer. Pure: takes state, returns an HTML string.
// Score cells only ever show numbers that came back from the service —
// either the committed scores in the snapshot or the /assess previews.

import { CRITICALITY_CLASSES } from './scales.js';
import { EditableField, WorkspaceState, effectiveRecords, entryById } from './state.js';
import { ScoreDoc } from './types.js';

const ESCAPES: Record<string, string> = {
  '&': '&amp;',
  '<': '&lt;',
  '>': '&gt;',
  '"': '&quot;',
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"]/g, (ch) => ESCAPES[ch] ?? ch);
}

export const GRID_COLUMNS = [
  'EntryId',
  'Asset/Service',
  'Owner',
  'AssetValue',
  'Threat',
  'ThreatLevel',
  'ImpactC',
  'ImpactI',
  'ImpactA',
  'Exposure',
  'VulnLevel',
  'ThreatValue',
  'Likelihood',
  'RiskImpactRating',
  'CriticalityLevel',
  '',
] as const;

interface EditableCell {
  field: EditableField;
  value: number;
  min: number;
  max: number;
}

function inputCell(entryId: string, cell: EditableCell, error: string | undefined): string {
  const input =
    `<input type="number" min="${cell.min}" max="${cell.max}" value="${cell.value}"` +
    ` data-entry-id="${escapeHtml(entryId)}" data-field="${cell.field}">`;
  const note = error
    ? `<span class="field-error" data-error-for="${escapeHtml(entryId)}:${cell.field}">` +
      `${escapeHtml(error)}</span>`
    : '';
  return `<td class="editable">${input}${note}</td>`;
}

function scoreCell(entryId: string, name: keyof ScoreDoc, value: string, cls = ''): string {
  const classAttr = cls ? ` class="${cls}"` : '';
  return (
    `<td${classAttr} data-entry-id="${escapeHtml(entryId)}" data-score="${name}">` +
    `${escapeHtml(value)}</td>`
  );
}

function entryRow(state: WorkspaceState, entryId: string): string {
  const entry = entryById(state, entryId);
  const joined = effectiveRecords(state, entryId);
  if (!entry || !joined) return '';
  const errors = state.fieldErrors[entryId] ?? {};
  // Preview scores (from /assess on staged inputs) win over committed ones.
  const score: ScoreDoc | null = state.previews[entryId] ?? entry.computed ?? null;
  const critClass = score ? CRITICALITY_CLASSES[score.criticality] ?? '' : '';
  const staged = Object.keys(state.pendingEdits[entryId] ?? {}).length > 0;
  const rowClasses = [critClass, staged ? 'staged' : ''].filter(Boolean).join(' ');
  const selected = state.selectedEntryId === entryId ? ' data-selected="true"' : '';

  const cells = [
    `<td class="entry-id">${escapeHtml(entryId)}</td>`,
    `<td>${escapeHtml(joined.assetName)}</td>`,
    `<td>${escapeHtml(joined.owner)}</td>`,
    inputCell(entryId, { field: 'asset_value', value: joined.assetValue, min: 1, max: 5 }, errors.asset_value),
    `<td>${escapeHtml(joined.threatText)}</td>`,
    inputCell(entryId, { field: 'threat_level', value: joined.threatLevel, min: 1, max: 5 }, errors.threat_level),
    inputCell(entryId, { field: 'impact_c', value: joined.impactC, min: 0, max: 4 }, errors.impact_c),
    inputCell(entryId, { field: 'impact_i', value: joined.impactI, min: 0, max: 4 }, errors.impact_i),
    inputCell(entryId, { field: 'impact_a', value: joined.impactA, min: 0, max: 4 }, errors.impact_a),
    inputCell(entryId, { field: 'exposure', value: joined.exposure, min: 1, max: 5 }, errors.exposure),
    scoreCell(entryId, 'vulnerability_rating', score ? String(score.vulnerability_rating) : '—'),
    scoreCell(entryId, 'threat_value', score ? String(score.threat_value) : '—'),
    inputCell(entryId, { field: 'likelihood', value: joined.likelihood, min: 1, max: 5 }, errors.likelihood),
    scoreCell(entryId, 'risk_impact', score ? String(score.risk_impact) : '—'),
    scoreCell(entryId, 'criticality', score ? score.criticality : '—', critClass),
    `<td class="actions">` +
      `<button data-action="save" data-entry-id="${escapeHtml(entryId)}"${staged ? '' : ' disabled'}>Save</button>` +
      `<button data-action="select" data-entry-id="${escapeHtml(entryId)}">What-if</button>` +
      `</td>`,
  ];
  return `<tr id="grid-${escapeHtml(entryId)}" class="${rowClasses}"${selected}>${cells.join('')}</tr>`;
}

export function renderConflictBanner(state: WorkspaceState): string {
  if (!state.conflict) return '';
  const { expectedVersion, actualVersion } = state.conflict;
  return (
    `<div class="conflict-banner" role="alert">` +
    `Save rejected: your edit was based on version ${expectedVersion}, but the register ` +
    `is now at version ${actualVersion}. Refresh to review the latest data; your staged ` +
    `edits are kept.</div>`
  );
}

export function renderGrid(state: WorkspaceState): string {
  if (!state.snapshot) {
    return '<p class="empty">No register loaded.</p>';
  }
  const header = GRID_COLUMNS.map((c) => `<th>${escapeHtml(c)}</th>`).join('');
  const ids = state.snapshot.entries.map((e) => e.id).sort();
  const rows = ids.map((id) => entryRow(state, id)).join('\n');
  return [
    renderConflictBanner(state),
    `<table class="register-grid" data-register-version="${state.version}">`,
    `<thead><tr>${header}</tr></thead>`,
    `<tbody>`,
    rows,
    `</tbody>`,
    `</table>`,
  ]
    .filter(Boolean)
    .join('\n');
}
