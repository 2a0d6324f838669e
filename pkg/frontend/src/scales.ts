// Client-side input bounds and display labels. Used only to block
// obviously out-of-range input before a request is made and to caption
// controls; every score still comes from the service.

export type Field =
  | 'asset_value'
  | 'threat_level'
  | 'exposure'
  | 'likelihood'
  | 'impact_c'
  | 'impact_i'
  | 'impact_a';

export const BOUNDS: Record<Field, { lo: number; hi: number }> = {
  asset_value: { lo: 1, hi: 5 },
  threat_level: { lo: 1, hi: 5 },
  exposure: { lo: 1, hi: 5 },
  likelihood: { lo: 1, hi: 5 },
  impact_c: { lo: 0, hi: 4 },
  impact_i: { lo: 0, hi: 4 },
  impact_a: { lo: 0, hi: 4 },
};

export const LIKELIHOOD_LABELS: Record<number, string> = {
  1: 'Very Unlikely',
  2: 'Unlikely',
  3: 'Possible',
  4: 'Likely',
  5: 'Very Likely',
};

export const THREAT_LABELS: Record<number, string> = {
  1: 'Insignificant',
  2: 'Minor',
  3: 'Moderate',
  4: 'Major',
  5: 'Catastrophic',
};

export const CRITICALITY_CLASSES: Record<string, string> = {
  Low: 'crit-low',
  Medium: 'crit-medium',
  High: 'crit-high',
  Critical: 'crit-critical',
};

/** Returns an error message for out-of-range input, or null when valid. */
export function rangeError(field: Field, value: number): string | null {
  const { lo, hi } = BOUNDS[field];
  if (!Number.isInteger(value) || value < lo || value > hi) {
    return `${field} must be an integer in [${lo}, ${hi}], got ${value}`;
  }
  return null;
}
