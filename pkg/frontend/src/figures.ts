/**
 * Figure registry: which CSV series make up each figure, and how to
 * resolve them into plottable point lists. All numbers come from CSV;
 * figures carry no physics.
 */

import { join } from 'path';
import {
  MetricColumn,
  SegmentRow,
  TimeseriesRow,
  loadSegments,
  loadTimeseries,
  metricValue,
} from './csv.js';

export interface SeriesSelector {
  label: string;
  column: MetricColumn;
  /** Filter on scenario_id; omitted = all rows in the file. */
  scenarioId?: string;
  /** Filter on the sweep_value text exactly as written by the engine. */
  sweepValue?: string;
  /** Sweep mode: take, per sweep value, the sample nearest this time. */
  tSlice?: number;
}

export interface PanelSpec {
  title: string;
  /** Base name of the CSV pair, e.g. "fig3a" -> fig3a_timeseries.csv. */
  dataFile: string;
  xLabel: string;
  yLabel: string;
  /** "time": x = t. "sweep": x = sweep value, y at the series tSlice. */
  mode: 'time' | 'sweep';
  series: SeriesSelector[];
  /** Overlay charging/discharging markers from the segments CSV. */
  segmentMarkers?: boolean;
}

export interface FigureSpec {
  id: string;
  title: string;
  panels: PanelSpec[];
}

export interface ResolvedSeries {
  label: string;
  points: { x: number; y: number }[];
}

export interface ResolvedPanel {
  spec: PanelSpec;
  series: ResolvedSeries[];
  segments: SegmentRow[];
}

export class SelectorError extends Error {}

const W_SPLIT: { column: MetricColumn; label: string }[] = [
  { column: 'ergotropy', label: 'W' },
  { column: 'ergotropy_incoherent', label: 'W_i' },
  { column: 'ergotropy_coherent', label: 'W_c' },
];

function splitPanel(
  title: string,
  dataFile: string,
  mode: 'time' | 'sweep',
  tSlice?: number,
): PanelSpec {
  return {
    title,
    dataFile,
    xLabel: mode === 'time' ? 't' : 'k0 r',
    yLabel: 'work',
    mode,
    series: W_SPLIT.map((s) => ({ ...s, tSlice })),
  };
}

export const FIGURES: Record<string, FigureSpec> = {
  fig1: {
    id: 'fig1',
    title: 'Central-pair ergotropy, XXX vs DM coupling',
    panels: [
      {
        title: 'ergotropy',
        dataFile: 'fig1',
        xLabel: 't',
        yLabel: 'W',
        mode: 'time',
        series: [
          { label: 'XXX', column: 'ergotropy', scenarioId: 'fig1_xxx' },
          { label: 'DM', column: 'ergotropy', scenarioId: 'fig1_dm' },
        ],
      },
    ],
  },
  fig2: {
    id: 'fig2',
    title: 'Central-pair charging power, XXX vs DM coupling',
    panels: [
      {
        title: 'charging power',
        dataFile: 'fig2',
        xLabel: 't',
        yLabel: 'P_W',
        mode: 'time',
        series: [
          { label: 'XXX', column: 'power_charging', scenarioId: 'fig2_xxx' },
          { label: 'DM', column: 'power_charging', scenarioId: 'fig2_dm' },
        ],
      },
    ],
  },
  fig3: {
    id: 'fig3',
    title: 'Collective decoherence: work split vs time',
    panels: [
      splitPanel('(a) squeezed bath, collective', 'fig3a', 'time'),
      splitPanel('(b) squeezed bath, independent', 'fig3b', 'time'),
      splitPanel('(c) vacuum, collective', 'fig3c', 'time'),
      splitPanel('(d) vacuum, independent', 'fig3d', 'time'),
    ],
  },
  fig4: {
    id: 'fig4',
    title: 'Singlet work at t = 2 vs separation',
    panels: [
      splitPanel('(a) T = 5', 'fig4a', 'sweep', 2.0),
      splitPanel('(b) T = 0.4', 'fig4b', 'sweep', 2.0),
    ],
  },
  fig5T: {
    id: 'fig5T',
    title: 'Work at t = 2 vs bath temperature',
    panels: [
      {
        title: '(a) collective regime',
        dataFile: 'fig5T',
        xLabel: 'T',
        yLabel: 'W',
        mode: 'sweep',
        series: [
          { label: 'W', column: 'ergotropy', scenarioId: 'fig5T_collective', tSlice: 2.0 },
        ],
      },
      {
        title: '(b) independent regime',
        dataFile: 'fig5T',
        xLabel: 'T',
        yLabel: 'W',
        mode: 'sweep',
        series: [
          { label: 'W', column: 'ergotropy', scenarioId: 'fig5T_independent', tSlice: 2.0 },
        ],
      },
    ],
  },
  fig5: {
    id: 'fig5',
    title: 'Battery ergotropy vs time across the transverse field',
    panels: [
      {
        title: 'ergotropy',
        dataFile: 'fig5',
        xLabel: 't',
        yLabel: 'W',
        mode: 'time',
        series: ['0.25', '0.5', '1.0', '1.5'].map((lam) => ({
          label: `lambda = ${lam}`,
          column: 'ergotropy' as MetricColumn,
          sweepValue: lam,
        })),
      },
    ],
  },
  fig6: {
    id: 'fig6',
    title: 'Battery ergotropy vs transverse field at fixed times',
    panels: [
      {
        title: 'ergotropy',
        dataFile: 'fig6',
        xLabel: 'lambda',
        yLabel: 'W',
        mode: 'sweep',
        series: [20, 40, 60, 80].map((t) => ({
          label: `t = ${t}`,
          column: 'ergotropy' as MetricColumn,
          tSlice: t,
        })),
      },
    ],
  },
  fig7: {
    id: 'fig7',
    title: 'Battery energy and power vs transverse field at t = 40',
    panels: [
      {
        title: '(a) energy',
        dataFile: 'fig7',
        xLabel: 'lambda',
        yLabel: 'E',
        mode: 'sweep',
        series: [{ label: 'E(40)', column: 'energy', tSlice: 40 }],
      },
      {
        title: '(b) instantaneous power',
        dataFile: 'fig7',
        xLabel: 'lambda',
        yLabel: 'P',
        mode: 'sweep',
        series: [{ label: 'P(40)', column: 'power_inst', tSlice: 40 }],
      },
    ],
  },
  fig8: {
    id: 'fig8',
    title: 'Charging power and segment structure across the field',
    panels: [
      {
        title: '(a) lambda = 0.25',
        dataFile: 'fig8a',
        xLabel: 't',
        yLabel: 'P_W',
        mode: 'time',
        series: [{ label: 'P_W', column: 'power_charging', scenarioId: 'fig8a' }],
        segmentMarkers: true,
      },
      {
        title: '(b) lambda = 0.5',
        dataFile: 'fig8b',
        xLabel: 't',
        yLabel: 'P_W',
        mode: 'time',
        series: [{ label: 'P_W', column: 'power_charging', scenarioId: 'fig8b' }],
        segmentMarkers: true,
      },
      {
        title: '(c) lambda = 1.0',
        dataFile: 'fig8c',
        xLabel: 't',
        yLabel: 'P_W',
        mode: 'time',
        series: [{ label: 'P_W', column: 'power_charging', scenarioId: 'fig8c' }],
        segmentMarkers: true,
      },
    ],
  },
};

function describeSelector(sel: SeriesSelector): string {
  const parts = [`column=${sel.column}`];
  if (sel.scenarioId !== undefined) parts.push(`scenario_id=${sel.scenarioId}`);
  if (sel.sweepValue !== undefined) parts.push(`sweep_value=${sel.sweepValue}`);
  if (sel.tSlice !== undefined) parts.push(`t~${sel.tSlice}`);
  return `${sel.label} (${parts.join(', ')})`;
}

function matches(row: { scenarioId: string; sweepValue: string }, sel: SeriesSelector): boolean {
  if (sel.scenarioId !== undefined && row.scenarioId !== sel.scenarioId) return false;
  if (sel.sweepValue !== undefined && row.sweepValue !== sel.sweepValue) return false;
  return true;
}

function resolveSeries(
  rows: TimeseriesRow[],
  sel: SeriesSelector,
  mode: 'time' | 'sweep',
  file: string,
): ResolvedSeries {
  const selected = rows.filter((r) => matches(r, sel));
  if (selected.length === 0) {
    throw new SelectorError(`empty selection in ${file} for series ${describeSelector(sel)}`);
  }
  if (mode === 'time') {
    return {
      label: sel.label,
      points: selected.map((r) => ({ x: r.t, y: metricValue(r, sel.column) })),
    };
  }
  // sweep mode: one point per sweep value, sample nearest the time slice
  const slice = sel.tSlice ?? 0;
  const byValue = new Map<string, TimeseriesRow>();
  for (const row of selected) {
    const current = byValue.get(row.sweepValue);
    if (current === undefined || Math.abs(row.t - slice) < Math.abs(current.t - slice)) {
      byValue.set(row.sweepValue, row);
    }
  }
  const points = [...byValue.entries()]
    .map(([value, row]) => ({ x: Number(value), y: metricValue(row, sel.column) }))
    .filter((p) => Number.isFinite(p.x))
    .sort((a, b) => a.x - b.x);
  if (points.length === 0) {
    throw new SelectorError(
      `selection in ${file} for series ${describeSelector(sel)} has no numeric sweep values`,
    );
  }
  return { label: sel.label, points };
}

export function resolvePanel(panel: PanelSpec, dataDir: string): ResolvedPanel {
  const tsPath = join(dataDir, `${panel.dataFile}_timeseries.csv`);
  const rows = loadTimeseries(tsPath);
  const series = panel.series.map((sel) => resolveSeries(rows, sel, panel.mode, tsPath));
  let segments: SegmentRow[] = [];
  if (panel.segmentMarkers) {
    const segPath = join(dataDir, `${panel.dataFile}_segments.csv`);
    segments = loadSegments(segPath).filter((seg) =>
      panel.series.some((sel) => matches(seg, sel)),
    );
  }
  return { spec: panel, series, segments };
}

export function resolveFigure(id: string, dataDir: string): ResolvedPanel[] {
  const spec = FIGURES[id];
  if (spec === undefined) {
    throw new SelectorError(
      `unknown figure ${JSON.stringify(id)}; known: ${Object.keys(FIGURES).join(', ')}`,
    );
  }
  return spec.panels.map((panel) => resolvePanel(panel, dataDir));
}
