#!/usr/bin/env node
/** Render learning-curve and deficiency charts from experiment CSVs.
 *
 * Usage: plots <results_dir> [--out <dir>] [--grid N]
 *
 * Reads <results_dir>/curves.csv and deficiency.csv, interpolates every
 * strategy's accuracy curve onto a shared annotation-effort grid, and
 * writes learning_curves.svg, deficiency.svg, and interpolated.json
 * (the exact plotted values, for downstream verification).
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { parseArgs } from "node:util";

import { deficiencyChart, learningCurveChart } from "./charts.js";
import { readCurves, readDeficiency, strategies } from "./csv.js";
import { interpolateAll, sharedGrid } from "./interpolate.js";

export interface PlotOutputs {
  curvesSvg: string;
  deficiencySvg: string;
  interpolatedJson: string;
}

export function renderPlots(resultsDir: string, gridResolution: number): PlotOutputs {
  const table = readCurves(join(resultsDir, "curves.csv"));
  const deficiency = readDeficiency(join(resultsDir, "deficiency.csv"));

  const grid = sharedGrid(table, gridResolution);
  const series = interpolateAll(table, grid);

  const accMaxByRepeat = new Map<number, number>();
  for (const row of deficiency) accMaxByRepeat.set(row.repeat, row.accMax);
  const tops = [...accMaxByRepeat.values()];
  const meanTop = tops.length
    ? tops.reduce((a, b) => a + b, 0) / tops.length
    : Math.max(...[...series.values()].flatMap((s) => s.mean));

  const sums = new Map<string, { total: number; count: number }>();
  for (const row of deficiency) {
    const s = sums.get(row.strategy) ?? { total: 0, count: 0 };
    s.total += row.deficiency;
    s.count += 1;
    sums.set(row.strategy, s);
  }
  const means = new Map(
    [...sums].map(([name, s]) => [name, s.total / s.count]),
  );

  const interpolated = {
    grid,
    strategies: strategies(table),
    series: Object.fromEntries(
      [...series.values()].map((s) => [
        s.strategy,
        {
          mean: s.mean,
          perRepeat: Object.fromEntries(s.perRepeat),
        },
      ]),
    ),
    meanTopAccuracy: meanTop,
  };

  return {
    curvesSvg: learningCurveChart(grid, series, meanTop),
    deficiencySvg: deficiencyChart(means),
    interpolatedJson: JSON.stringify(interpolated, null, 2),
  };
}

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        out: { type: "string" },
        grid: { type: "string", default: "20" },
      },
    });
  } catch (err) {
    console.error(`argument error: ${(err as Error).message}`);
    return 1;
  }
  if (parsed.positionals.length !== 1) {
    console.error("usage: plots <results_dir> [--out <dir>] [--grid N]");
    return 1;
  }
  const resultsDir = parsed.positionals[0];
  const outDir = parsed.values.out ?? resultsDir;
  const gridResolution = Number(parsed.values.grid);
  if (!Number.isInteger(gridResolution) || gridResolution < 2) {
    console.error(`--grid must be an integer >= 2, got "${parsed.values.grid}"`);
    return 1;
  }

  let outputs: PlotOutputs;
  try {
    outputs = renderPlots(resultsDir, gridResolution);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }

  mkdirSync(outDir, { recursive: true });
  const files: [string, string][] = [
    ["learning_curves.svg", outputs.curvesSvg],
    ["deficiency.svg", outputs.deficiencySvg],
    ["interpolated.json", outputs.interpolatedJson],
  ];
  for (const [name, content] of files) {
    const path = join(outDir, name);
    writeFileSync(path, content);
    console.log(path);
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
