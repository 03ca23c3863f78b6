import { existsSync, mkdtempSync, readFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { describe, expect, it } from 'vitest';
import { main, renderFigureToFile } from '../src/cli.js';
import { FIGURES, resolveFigure } from '../src/figures.js';
import { render } from '../src/render.js';

const FIXTURES = join(__dirname, 'fixtures');

describe('render', () => {
  it('produces one polyline per resolved series', () => {
    for (const id of Object.keys(FIGURES)) {
      const panels = resolveFigure(id, FIXTURES);
      const result = render(FIGURES[id], panels);
      const polylines = result.svg.match(/<polyline /g) ?? [];
      const total = panels.reduce((n, p) => n + p.series.length, 0);
      expect(polylines.length, id).toBe(total);
      expect(result.svg.startsWith('<svg ')).toBe(true);
    }
  });

  it('is deterministic for identical input', () => {
    const a = render(FIGURES.fig3, resolveFigure('fig3', FIXTURES));
    const b = render(FIGURES.fig3, resolveFigure('fig3', FIXTURES));
    expect(a.svg).toBe(b.svg);
    expect(a.description).toEqual(b.description);
  });

  it('describes panel layout and point counts', () => {
    const { description } = render(FIGURES.fig3, resolveFigure('fig3', FIXTURES));
    expect(description.figureId).toBe('fig3');
    expect(description.panels.length).toBe(4);
    for (const panel of description.panels) {
      expect(panel.seriesCount).toBe(3);
      for (const count of panel.pointCounts) {
        expect(count).toBeGreaterThan(0);
      }
    }
  });

  it('draws segment bands for fig8', () => {
    const { svg, description } = render(FIGURES.fig8, resolveFigure('fig8', FIXTURES));
    expect(description.panels.every((p) => p.segmentCount > 0)).toBe(true);
    expect(svg).toContain('<rect x=');
  });
});

describe('cli', () => {
  it('renders a figure to an SVG file', () => {
    const out = mkdtempSync(join(tmpdir(), 'qbattery-svg-'));
    const code = main(['render', '--figure', 'fig1', '--data', FIXTURES, '--out', out]);
    expect(code).toBe(0);
    const path = join(out, 'fig1.svg');
    expect(existsSync(path)).toBe(true);
    expect(readFileSync(path, 'utf8')).toContain('<polyline');
  });

  it('renders every figure with --figure all', () => {
    const out = mkdtempSync(join(tmpdir(), 'qbattery-svg-'));
    const code = main(['render', '--figure', 'all', '--data', FIXTURES, '--out', out]);
    expect(code).toBe(0);
    for (const id of Object.keys(FIGURES)) {
      expect(existsSync(join(out, `${id}.svg`)), id).toBe(true);
    }
  });

  it('fails cleanly on an unknown figure', () => {
    const out = mkdtempSync(join(tmpdir(), 'qbattery-svg-'));
    expect(main(['render', '--figure', 'fig99', '--data', FIXTURES, '--out', out])).toBe(1);
  });

  it('fails cleanly when the data directory has no CSVs', () => {
    const empty = mkdtempSync(join(tmpdir(), 'qbattery-nodata-'));
    const out = mkdtempSync(join(tmpdir(), 'qbattery-svg-'));
    expect(main(['render', '--figure', 'fig1', '--data', empty, '--out', out])).toBe(1);
  });

  it('exports renderFigureToFile for library use', () => {
    const out = mkdtempSync(join(tmpdir(), 'qbattery-svg-'));
    const path = renderFigureToFile('fig6', FIXTURES, out);
    expect(existsSync(path)).toBe(true);
  });
});
