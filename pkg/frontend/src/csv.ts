/**
 * Loading and validation of the simulation engine's CSV output.
 *
 * Two file kinds per scenario run:
 *   <name>_timeseries.csv: scenario_id, sweep_value, t, energy, ergotropy,
 *     ergotropy_incoherent, ergotropy_coherent, power_inst, power_charging
 *   <name>_segments.csv: scenario_id, sweep_value, t_start, t_end, kind,
 *     avg_power
 */

import { readFileSync } from 'fs';
import Papa from 'papaparse';

export const TIMESERIES_COLUMNS = [
  'scenario_id',
  'sweep_value',
  't',
  'energy',
  'ergotropy',
  'ergotropy_incoherent',
  'ergotropy_coherent',
  'power_inst',
  'power_charging',
] as const;

export const SEGMENT_COLUMNS = [
  'scenario_id',
  'sweep_value',
  't_start',
  't_end',
  'kind',
  'avg_power',
] as const;

export type MetricColumn =
  | 'energy'
  | 'ergotropy'
  | 'ergotropy_incoherent'
  | 'ergotropy_coherent'
  | 'power_inst'
  | 'power_charging';

export interface TimeseriesRow {
  scenarioId: string;
  sweepValue: string; // empty string when the run has no sweep
  t: number;
  energy: number;
  ergotropy: number;
  ergotropyIncoherent: number;
  ergotropyCoherent: number;
  powerInst: number;
  powerCharging: number;
}

export type SegmentKind = 'charging' | 'discharging' | 'idle';

export interface SegmentRow {
  scenarioId: string;
  sweepValue: string;
  tStart: number;
  tEnd: number;
  kind: SegmentKind;
  avgPower: number;
}

export class CsvSchemaError extends Error {}

function parseRecords(path: string, expectedColumns: readonly string[]): Record<string, string>[] {
  let text: string;
  try {
    text = readFileSync(path, 'utf8');
  } catch (err) {
    throw new CsvSchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new CsvSchemaError(`${path}: parse error at row ${first.row}: ${first.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  if (fields.join(',') !== expectedColumns.join(',')) {
    throw new CsvSchemaError(
      `${path}: header [${fields.join(',')}] does not match schema [${expectedColumns.join(',')}]`,
    );
  }
  return parsed.data;
}

function toNumber(path: string, field: string, value: string): number {
  const n = Number(value);
  if (!Number.isFinite(n)) {
    throw new CsvSchemaError(`${path}: non-numeric ${field} value ${JSON.stringify(value)}`);
  }
  return n;
}

export function loadTimeseries(path: string): TimeseriesRow[] {
  return parseRecords(path, TIMESERIES_COLUMNS).map((rec) => ({
    scenarioId: rec.scenario_id,
    sweepValue: rec.sweep_value ?? '',
    t: toNumber(path, 't', rec.t),
    energy: toNumber(path, 'energy', rec.energy),
    ergotropy: toNumber(path, 'ergotropy', rec.ergotropy),
    ergotropyIncoherent: toNumber(path, 'ergotropy_incoherent', rec.ergotropy_incoherent),
    ergotropyCoherent: toNumber(path, 'ergotropy_coherent', rec.ergotropy_coherent),
    powerInst: toNumber(path, 'power_inst', rec.power_inst),
    powerCharging: toNumber(path, 'power_charging', rec.power_charging),
  }));
}

export function loadSegments(path: string): SegmentRow[] {
  return parseRecords(path, SEGMENT_COLUMNS).map((rec) => {
    if (rec.kind !== 'charging' && rec.kind !== 'discharging' && rec.kind !== 'idle') {
      throw new CsvSchemaError(`${path}: unknown segment kind ${JSON.stringify(rec.kind)}`);
    }
    return {
      scenarioId: rec.scenario_id,
      sweepValue: rec.sweep_value ?? '',
      tStart: toNumber(path, 't_start', rec.t_start),
      tEnd: toNumber(path, 't_end', rec.t_end),
      kind: rec.kind,
      avgPower: toNumber(path, 'avg_power', rec.avg_power),
    };
  });
}

export function metricValue(row: TimeseriesRow, column: MetricColumn): number {
  switch (column) {
    case 'energy':
      return row.energy;
    case 'ergotropy':
      return row.ergotropy;
    case 'ergotropy_incoherent':
      return row.ergotropyIncoherent;
    case 'ergotropy_coherent':
      return row.ergotropyCoherent;
    case 'power_inst':
      return row.powerInst;
    case 'power_charging':
      return row.powerCharging;
  }
}
