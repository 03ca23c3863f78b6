/**
 * CLI: render --figure <id> --data <dir> --out <dir>
 *
 * Reads the simulation CSVs from --data and writes <id>.svg into --out.
 * Use --figure all to render every registered figure.
 */

import { mkdirSync, writeFileSync } from 'fs';
import { join } from 'path';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { CsvSchemaError } from './csv.js';
import { FIGURES, SelectorError, resolveFigure } from './figures.js';
import { render } from './render.js';

export function renderFigureToFile(id: string, dataDir: string, outDir: string): string {
  const spec = FIGURES[id];
  if (spec === undefined) {
    throw new SelectorError(
      `unknown figure ${JSON.stringify(id)}; known: ${Object.keys(FIGURES).join(', ')}`,
    );
  }
  const panels = resolveFigure(id, dataDir);
  const result = render(spec, panels);
  mkdirSync(outDir, { recursive: true });
  const outPath = join(outDir, `${id}.svg`);
  writeFileSync(outPath, result.svg);
  return outPath;
}

export function main(argv: string[]): number {
  const parser = yargs(argv)
    .command('render', 'render one figure (or all) from simulation CSVs', (cmd) =>
      cmd
        .option('figure', { type: 'string', demandOption: true, describe: 'figure id or "all"' })
        .option('data', { type: 'string', demandOption: true, describe: 'CSV input directory' })
        .option('out', { type: 'string', demandOption: true, describe: 'SVG output directory' }),
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg) => {
      throw new Error(msg);
    });

  let args;
  try {
    args = parser.parseSync();
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }

  const ids =
    args.figure === 'all' ? Object.keys(FIGURES) : [args.figure as string];
  try {
    for (const id of ids) {
      const outPath = renderFigureToFile(id, args.data as string, args.out as string);
      console.log(`wrote ${outPath}`);
    }
  } catch (err) {
    if (err instanceof SelectorError || err instanceof CsvSchemaError) {
      console.error(err.message);
      return 1;
    }
    throw err;
  }
  return 0;
}

// run only when invoked as a script, not when imported by tests
if (process.argv[1] && process.argv[1].endsWith('cli.js')) {
  process.exit(main(hideBin(process.argv)));
}
