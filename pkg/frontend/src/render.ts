/**
 * SVG rendering of resolved figures. Pure string assembly, deterministic
 * for identical input; no physics, no numeric processing beyond scales.
 */

import { FigureSpec, ResolvedPanel } from './figures.js';

export interface PanelDescription {
  title: string;
  seriesCount: number;
  pointCounts: number[];
  segmentCount: number;
}

export interface RenderResult {
  svg: string;
  description: { figureId: string; panels: PanelDescription[] };
}

const PANEL_WIDTH = 360;
const PANEL_HEIGHT = 260;
const MARGIN = { top: 34, right: 16, bottom: 42, left: 56 };
const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];
const SEGMENT_COLOR: Record<string, string> = {
  charging: '#2ca02c',
  discharging: '#d62728',
  idle: '#999999',
};

interface Scale {
  (v: number): number;
  domain: [number, number];
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    // degenerate domain: pad so the single value sits mid-range
    d0 -= 0.5;
    d1 += 0.5;
  }
  const f = ((v: number) => range[0] + ((v - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  f.domain = [d0, d1];
  return f;
}

function ticks(domain: [number, number], count: number): number[] {
  const [lo, hi] = domain;
  const step = (hi - lo) / (count - 1);
  return Array.from({ length: count }, (_, i) => lo + i * step);
}

function fmt(v: number): string {
  if (v === 0) return '0';
  const abs = Math.abs(v);
  if (abs >= 1000 || abs < 0.001) return v.toExponential(1);
  return String(Number(v.toPrecision(3)));
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function renderPanel(panel: ResolvedPanel, originX: number, originY: number): string {
  const innerW = PANEL_WIDTH - MARGIN.left - MARGIN.right;
  const innerH = PANEL_HEIGHT - MARGIN.top - MARGIN.bottom;
  const xs = panel.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = panel.series.flatMap((s) => s.points.map((p) => p.y));
  const xScale = linearScale([Math.min(...xs), Math.max(...xs)], [0, innerW]);
  const yScale = linearScale([Math.min(...ys), Math.max(...ys)], [innerH, 0]);

  const parts: string[] = [];
  parts.push(`<g transform="translate(${originX + MARGIN.left},${originY + MARGIN.top})">`);
  parts.push(
    `<text x="${innerW / 2}" y="-14" text-anchor="middle" font-size="13">${esc(panel.spec.title)}</text>`,
  );
  // axes
  parts.push(`<line x1="0" y1="${innerH}" x2="${innerW}" y2="${innerH}" stroke="#000"/>`);
  parts.push(`<line x1="0" y1="0" x2="0" y2="${innerH}" stroke="#000"/>`);
  for (const tx of ticks(xScale.domain, 5)) {
    const px = xScale(tx);
    parts.push(`<line x1="${px}" y1="${innerH}" x2="${px}" y2="${innerH + 4}" stroke="#000"/>`);
    parts.push(
      `<text x="${px}" y="${innerH + 16}" text-anchor="middle" font-size="10">${fmt(tx)}</text>`,
    );
  }
  for (const ty of ticks(yScale.domain, 5)) {
    const py = yScale(ty);
    parts.push(`<line x1="-4" y1="${py}" x2="0" y2="${py}" stroke="#000"/>`);
    parts.push(
      `<text x="-7" y="${py + 3}" text-anchor="end" font-size="10">${fmt(ty)}</text>`,
    );
  }
  parts.push(
    `<text x="${innerW / 2}" y="${innerH + 32}" text-anchor="middle" font-size="11">${esc(panel.spec.xLabel)}</text>`,
  );
  parts.push(
    `<text transform="translate(${-40},${innerH / 2}) rotate(-90)" text-anchor="middle" font-size="11">${esc(panel.spec.yLabel)}</text>`,
  );

  // segment strip under the time axis: one tinted band per power segment
  if (panel.segments.length > 0) {
    for (const seg of panel.segments) {
      const x0 = xScale(seg.tStart);
      const x1 = xScale(seg.tEnd);
      parts.push(
        `<rect x="${x0}" y="${innerH + 20}" width="${x1 - x0}" height="4" ` +
          `fill="${SEGMENT_COLOR[seg.kind]}" opacity="0.8"/>`,
      );
    }
  }

  panel.series.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    const path = series.points
      .map((p) => `${xScale(p.x).toFixed(2)},${yScale(p.y).toFixed(2)}`)
      .join(' ');
    parts.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
    // legend entry
    const ly = 6 + i * 14;
    parts.push(`<line x1="${innerW - 58}" y1="${ly}" x2="${innerW - 42}" y2="${ly}" stroke="${color}" stroke-width="1.5"/>`);
    parts.push(
      `<text x="${innerW - 38}" y="${ly + 3}" font-size="10">${esc(series.label)}</text>`,
    );
  });
  parts.push('</g>');
  return parts.join('\n');
}

export function render(spec: FigureSpec, panels: ResolvedPanel[]): RenderResult {
  const columns = panels.length > 2 ? 2 : panels.length;
  const rows = Math.ceil(panels.length / columns);
  const width = columns * PANEL_WIDTH;
  const height = rows * PANEL_HEIGHT + 22;

  const body = panels
    .map((panel, i) =>
      renderPanel(panel, (i % columns) * PANEL_WIDTH, 22 + Math.floor(i / columns) * PANEL_HEIGHT),
    )
    .join('\n');
  const svg = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    `<text x="${width / 2}" y="16" text-anchor="middle" font-size="14">${esc(spec.title)}</text>`,
    body,
    '</svg>',
  ].join('\n');

  return {
    svg,
    description: {
      figureId: spec.id,
      panels: panels.map((p) => ({
        title: p.spec.title,
        seriesCount: p.series.length,
        pointCounts: p.series.map((s) => s.points.length),
        segmentCount: p.segments.length,
      })),
    },
  };
}
