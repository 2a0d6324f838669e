// Risk heat map: likelihood (columns 1-5) against the combined
// asset-value x threat-value magnitude, folded into five buckets.
// Each cell lists the entries that land there and is tinted by the
// worst criticality present (as computed by the service).

import { CRITICALITY_CLASSES } from './scales.js';
import { escapeHtml } from './grid.js';
import { RegisterDoc } from './types.js';

/** Inclusive bounds of the asset-value x threat-value product per bucket. */
export const IMPACT_BUCKETS: ReadonlyArray<readonly [number, number]> = [
  [2, 11],
  [12, 21],
  [22, 31],
  [32, 41],
  [42, 50],
];

/** 1-based bucket index for an asset_value * threat_value product (2..50). */
export function impactBucket(avTimesTv: number): number {
  for (let i = 0; i < IMPACT_BUCKETS.length; i += 1) {
    const bounds = IMPACT_BUCKETS[i]!;
    if (avTimesTv >= bounds[0] && avTimesTv <= bounds[1]) return i + 1;
  }
  throw new Error(`impact product ${avTimesTv} outside 2..50`);
}

interface CellContent {
  entryIds: string[];
  worstRank: number;
  worstLabel: string;
}

export function renderHeatmap(snapshot: RegisterDoc | null): string {
  if (!snapshot) return '<p class="empty">No register loaded.</p>';

  const cells = new Map<string, CellContent>();
  for (const entry of snapshot.entries) {
    const score = entry.computed;
    const asset = snapshot.assets.find((a) => a.id === entry.asset_id);
    if (!score || !asset) continue;
    const bucket = impactBucket(asset.asset_value * score.threat_value);
    const key = `${bucket}-${entry.likelihood}`;
    const rank = score.criticality_rank;
    const cell = cells.get(key);
    if (cell) {
      cell.entryIds.push(entry.id);
      if (rank > cell.worstRank) {
        cell.worstRank = rank;
        cell.worstLabel = score.criticality;
      }
    } else {
      cells.set(key, { entryIds: [entry.id], worstRank: rank, worstLabel: score.criticality });
    }
  }

  const colHeads = [1, 2, 3, 4, 5]
    .map((lh) => `<th scope="col">Likelihood ${lh}</th>`)
    .join('');
  const rows: string[] = [];
  for (let bucket = 5; bucket >= 1; bucket -= 1) {
    const bounds = IMPACT_BUCKETS[bucket - 1]!;
    const cols = [1, 2, 3, 4, 5]
      .map((lh) => {
        const cell = cells.get(`${bucket}-${lh}`);
        const cls = cell ? CRITICALITY_CLASSES[cell.worstLabel] ?? 'crit-empty' : 'crit-empty';
        const body = cell ? cell.entryIds.sort().map(escapeHtml).join(', ') : '';
        return `<td class="${cls}" data-cell="b${bucket}-l${lh}">${body}</td>`;
      })
      .join('');
    rows.push(
      `<tr><th scope="row">Impact ${bounds[0]}–${bounds[1]}</th>${cols}</tr>`,
    );
  }
  return [
    `<table class="heatmap" data-register-version="${snapshot.version}">`,
    `<thead><tr><th></th>${colHeads}</tr></thead>`,
    `<tbody>`,
    rows.join('\n'),
    `</tbody>`,
    `</table>`,
  ].join('\n');
}
