// What-if panel: rendered deltas are the service's simulation results
// verbatim, a vanished entry resets the panel, and applying an effect
// persists it through guarded record updates.

import { describe, expect, it } from 'vitest';
import { ApiClient } from '../src/api.js';
import { applyEffect, refresh, runWhatIf } from '../src/controller.js';
import { initialState, selectEntry } from '../src/state.js';
import { renderWhatIf } from '../src/whatif.js';
import { EntrySpec, FakeService, makeRegister, mulberry32, randomInt } from './fakeService.js';

const WORKED: EntrySpec = {
  id: 'e1',
  assetValue: 4,
  threatLevel: 4,
  cia: { confidentiality: 4, integrity: 4, availability: 4 },
  exposure: 5,
  likelihood: 4,
};

function panelValue(html: string, name: string): string {
  const match = html.match(new RegExp(`data-wi="${name}">([^<]*)<`));
  if (!match) throw new Error(`no ${name} in panel`);
  return match[1]!;
}

describe('what-if simulation display', () => {
  it('repeats the service delta verbatim', async () => {
    const fake = new FakeService(makeRegister([WORKED]));
    const api = new ApiClient('', fake.fetch);
    let state = await refresh(api, initialState());
    state = selectEntry(state, 'e1');
    state = await runWhatIf(api, state, {
      delta_confidentiality: 4,
      delta_integrity: 4,
      delta_availability: 4,
      delta_exposure: 4,
    });

    const response = fake.whatifResponses[0]!;
    expect(response.before.risk_impact).toBe(144);
    expect(response.after.risk_impact).toBe(80);
    expect(response.ri_reduction).toBe(64);

    const html = renderWhatIf(state);
    expect(panelValue(html, 'before-ri')).toBe(String(response.before.risk_impact));
    expect(panelValue(html, 'after-ri')).toBe(String(response.after.risk_impact));
    expect(panelValue(html, 'reduction')).toBe(String(response.ri_reduction));
    expect(panelValue(html, 'before-crit')).toBe(response.before.criticality);
    expect(panelValue(html, 'after-crit')).toBe(response.after.criticality);
  });

  it('matches the service answer for randomized effects', async () => {
    const rng = mulberry32(424242);
    const fake = new FakeService(makeRegister([WORKED]));
    const api = new ApiClient('', fake.fetch);
    let state = await refresh(api, initialState());
    state = selectEntry(state, 'e1');

    for (let round = 0; round < 25; round += 1) {
      const effect = {
        delta_confidentiality: randomInt(rng, 0, 4),
        delta_integrity: randomInt(rng, 0, 4),
        delta_availability: randomInt(rng, 0, 4),
        delta_exposure: randomInt(rng, 0, 4),
      };
      state = await runWhatIf(api, state, effect);
      const response = fake.whatifResponses[round]!;
      const html = renderWhatIf(state);
      expect(panelValue(html, 'before-ri')).toBe(String(response.before.risk_impact));
      expect(panelValue(html, 'after-ri')).toBe(String(response.after.risk_impact));
      expect(panelValue(html, 'reduction')).toBe(String(response.ri_reduction));
      // Simulations must never touch the register itself.
      expect(fake.putCalls).toHaveLength(0);
      expect(fake.register.version).toBe(3);
    }
  });

  it('resets the panel when the entry no longer exists', async () => {
    const fake = new FakeService(makeRegister([WORKED]));
    const api = new ApiClient('', fake.fetch);
    let state = await refresh(api, initialState());
    state = selectEntry(state, 'ghost');
    state = await runWhatIf(api, state, { delta_exposure: 1 });
    expect(state.selectedEntryId).toBeNull();
    expect(state.lastDelta).toBeNull();
    expect(renderWhatIf(state)).toContain('Select an entry');
  });

  it('shows slider positions from the active effect', async () => {
    const fake = new FakeService(makeRegister([WORKED]));
    const api = new ApiClient('', fake.fetch);
    let state = await refresh(api, initialState());
    state = selectEntry(state, 'e1');
    state = await runWhatIf(api, state, { delta_exposure: 2 });
    const html = renderWhatIf(state);
    expect(html).toContain('value="2" data-effect-field="delta_exposure"');
    expect(html).toContain('value="0" data-effect-field="delta_confidentiality"');
  });
});

describe('applying an effect', () => {
  it('persists remediation, vulnerability, and entry with carried versions', async () => {
    const fake = new FakeService(makeRegister([WORKED]));
    const api = new ApiClient('', fake.fetch);
    let state = await refresh(api, initialState());
    const v0 = state.version;
    state = selectEntry(state, 'e1');
    state = await runWhatIf(api, state, {
      delta_confidentiality: 4,
      delta_integrity: 4,
      delta_availability: 4,
      delta_exposure: 4,
    });
    const predicted = fake.whatifResponses[0]!.after;

    state = await applyEffect(api, state, 'Patch and isolate');

    expect(fake.putCalls.map((c) => c.kind)).toEqual(['remediation', 'vulnerability', 'entry']);
    expect(fake.putCalls.map((c) => c.expected_version)).toEqual([v0, v0 + 1, v0 + 2]);
    expect(state.version).toBe(v0 + 3);

    // Committed score equals what the simulation promised.
    const entry = state.snapshot!.entries.find((e) => e.id === 'e1')!;
    expect(entry.computed).toEqual(predicted);
    expect(entry.remediation_ids).toHaveLength(1);

    const remediation = state.snapshot!.remediations.find(
      (r) => r.id === entry.remediation_ids[0],
    )!;
    expect(remediation.status).toBe('Implemented');
    expect(remediation.description).toBe('Patch and isolate');

    // Vulnerability inputs were reduced with clamping.
    const vuln = state.snapshot!.vulnerabilities.find((v) => v.id === entry.vulnerability_id)!;
    expect(vuln.cia).toEqual({ confidentiality: 0, integrity: 0, availability: 0 });
    expect(vuln.exposure).toBe(1);

    // Panel returns to its pre-simulation state.
    expect(state.lastDelta).toBeNull();
    expect(state.activeEffect).toEqual({});
  });

  it('surfaces a conflict and keeps the panel when the commit is rejected', async () => {
    const fake = new FakeService(makeRegister([WORKED]));
    const api = new ApiClient('', fake.fetch);
    let state = await refresh(api, initialState());
    state = selectEntry(state, 'e1');
    state = await runWhatIf(api, state, { delta_exposure: 2 });
    fake.nextPutConflict = { expected_version: 3, actual_version: 9 };

    state = await applyEffect(api, state, 'Too late');
    expect(state.conflict).toEqual({ expectedVersion: 3, actualVersion: 9 });
    expect(state.lastDelta).not.toBeNull();
    expect(state.activeEffect).toEqual({ delta_exposure: 2 });
  });
});
