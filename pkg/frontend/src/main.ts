// Browser entry point: owns the singleton state, re-renders on change,
// and translates DOM events into controller calls.

import { ApiClient } from './api.js';
import {
  applyEffect,
  previewEntry,
  refresh,
  runWhatIf,
  saveEntry,
} from './controller.js';
import { renderGrid } from './grid.js';
import { renderHeatmap } from './heatmap.js';
import { WorkspaceState, initialState, selectEntry, stageEdit } from './state.js';
import { renderWhatIf } from './whatif.js';
import { EditableField } from './state.js';
import { ApiError, EffectDoc } from './types.js';

const api = new ApiClient('');
let state: WorkspaceState = initialState();

function render(): void {
  const grid = document.getElementById('grid');
  const heatmap = document.getElementById('heatmap');
  const whatif = document.getElementById('whatif');
  const status = document.getElementById('status');
  if (grid) grid.innerHTML = renderGrid(state);
  if (heatmap) heatmap.innerHTML = renderHeatmap(state.snapshot);
  if (whatif) whatif.innerHTML = renderWhatIf(state);
  if (status) status.textContent = state.statusMessage;
}

function setState(next: WorkspaceState): void {
  state = next;
  render();
}

async function run(work: Promise<WorkspaceState>): Promise<void> {
  try {
    setState(await work);
  } catch (error) {
    const message =
      error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    setState({ ...state, statusMessage: message });
  }
}

function collectEffect(): EffectDoc {
  const effect: EffectDoc = {};
  for (const input of document.querySelectorAll<HTMLInputElement>('[data-effect-field]')) {
    const key = input.dataset.effectField as keyof EffectDoc;
    const value = Number(input.value);
    if (value > 0) (effect as Record<string, number>)[key] = value;
  }
  return effect;
}

function onInput(event: Event): void {
  const target = event.target as HTMLElement;
  if (target instanceof HTMLInputElement && target.dataset.field) {
    const entryId = target.dataset.entryId!;
    const field = target.dataset.field as EditableField;
    const staged = stageEdit(state, entryId, field, Number(target.value));
    setState(staged);
    void run(previewEntry(api, staged, entryId));
  } else if (target instanceof HTMLInputElement && target.dataset.effectField) {
    void run(runWhatIf(api, state, collectEffect()));
  }
}

function onClick(event: Event): void {
  const target = (event.target as HTMLElement).closest<HTMLElement>('[data-action]');
  if (!target) return;
  const entryId = target.dataset.entryId ?? null;
  switch (target.dataset.action) {
    case 'save':
      if (entryId) void run(saveEntry(api, state, entryId));
      break;
    case 'select':
      setState(selectEntry(state, entryId));
      break;
    case 'apply-effect':
      void run(applyEffect(api, state, 'Remediation applied from workbench'));
      break;
    case 'refresh':
      void run(refresh(api, state));
      break;
    default:
      break;
  }
}

document.addEventListener('input', onInput);
document.addEventListener('click', onClick);
void run(refresh(api, state));
