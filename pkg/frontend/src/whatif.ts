// What-if panel renderer. Pure: takes state, returns an HTML string.
// The before/after numbers shown are copied verbatim from the last
// /whatif response; the panel never does its own risk arithmetic.

import { escapeHtml } from './grid.js';
import { WorkspaceState } from './state.js';
import { EffectDoc } from './types.js';

interface Slider {
  key: keyof EffectDoc;
  label: string;
  max: number;
}

const SLIDERS: Slider[] = [
  { key: 'delta_confidentiality', label: 'Reduce confidentiality impact', max: 4 },
  { key: 'delta_integrity', label: 'Reduce integrity impact', max: 4 },
  { key: 'delta_availability', label: 'Reduce availability impact', max: 4 },
  { key: 'delta_exposure', label: 'Reduce exposure', max: 4 },
];

function sliderRow(slider: Slider, value: number): string {
  return (
    `<label class="wi-slider">${escapeHtml(slider.label)}` +
    ` <input type="range" min="0" max="${slider.max}" step="1" value="${value}"` +
    ` data-effect-field="${slider.key}">` +
    ` <output data-effect-value="${slider.key}">${value}</output>` +
    `</label>`
  );
}

export function renderWhatIf(state: WorkspaceState): string {
  if (!state.selectedEntryId) {
    return '<p class="empty">Select an entry to explore remediation effects.</p>';
  }
  const entryId = state.selectedEntryId;
  const sliders = SLIDERS.map((s) =>
    sliderRow(s, (state.activeEffect[s.key] as number | undefined) ?? 0),
  ).join('\n');

  const delta = state.lastDelta;
  const result = delta
    ? [
        `<dl class="wi-result" data-entry-id="${escapeHtml(delta.entry_id)}">`,
        `<dt>Risk impact before</dt>` +
          `<dd data-wi="before-ri">${delta.before.risk_impact}</dd>`,
        `<dt>Risk impact after</dt>` +
          `<dd data-wi="after-ri">${delta.after.risk_impact}</dd>`,
        `<dt>Reduction</dt><dd data-wi="reduction">${delta.ri_reduction}</dd>`,
        `<dt>Criticality</dt>` +
          `<dd><span data-wi="before-crit">${escapeHtml(delta.before.criticality)}</span>` +
          ` → <span data-wi="after-crit">${escapeHtml(delta.after.criticality)}</span></dd>`,
        `</dl>`,
        `<button data-action="apply-effect" data-entry-id="${escapeHtml(entryId)}">` +
          `Apply as implemented remediation</button>`,
      ].join('\n')
    : '<p class="wi-pending">Adjust the sliders to preview the effect.</p>';

  return [
    `<section class="whatif" data-entry-id="${escapeHtml(entryId)}">`,
    `<h2>What-if: ${escapeHtml(entryId)}</h2>`,
    sliders,
    result,
    `</section>`,
  ].join('\n');
}
