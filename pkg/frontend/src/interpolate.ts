/** Piecewise-linear resampling of accuracy curves onto a shared
 * annotation-effort grid.  Same contract as the backend's
 * interpolate_curve: no extrapolation beyond the curve's endpoints. */

import { CurvePoint, CurveTable, splitKey } from "./csv.js";

export function interpolate(points: CurvePoint[], x: number): number {
  const n = points.length;
  if (n === 0) throw new Error("empty curve");
  if (x < points[0].labeledObjects || x > points[n - 1].labeledObjects) {
    throw new Error(`extrapolation not supported (x=${x})`);
  }
  for (let i = 1; i < n; i++) {
    const a = points[i - 1];
    const b = points[i];
    if (x <= b.labeledObjects) {
      if (b.labeledObjects === a.labeledObjects) return b.accuracy;
      const t = (x - a.labeledObjects) / (b.labeledObjects - a.labeledObjects);
      return a.accuracy + t * (b.accuracy - a.accuracy);
    }
  }
  return points[n - 1].accuracy;
}

/** Evenly spaced grid covering the range shared by every curve, so each
 * curve can be resampled without extrapolating. */
export function sharedGrid(table: CurveTable, resolution: number): number[] {
  if (table.size === 0) throw new Error("no curves");
  let lo = -Infinity;
  let hi = Infinity;
  for (const points of table.values()) {
    lo = Math.max(lo, points[0].labeledObjects);
    hi = Math.min(hi, points[points.length - 1].labeledObjects);
  }
  if (hi < lo) throw new Error("curves share no effort range");
  if (resolution < 2) throw new Error("grid resolution must be >= 2");
  const grid: number[] = [];
  for (let i = 0; i < resolution; i++) {
    grid.push(lo + ((hi - lo) * i) / (resolution - 1));
  }
  return grid;
}

export interface InterpolatedSeries {
  strategy: string;
  /** repeat -> accuracies on the grid */
  perRepeat: Map<number, number[]>;
  /** mean over repeats, per grid point */
  mean: number[];
}

export function interpolateAll(
  table: CurveTable,
  grid: number[],
): Map<string, InterpolatedSeries> {
  const series = new Map<string, InterpolatedSeries>();
  for (const [key, points] of table) {
    const { repeat, strategy } = splitKey(key);
    let s = series.get(strategy);
    if (!s) {
      s = { strategy, perRepeat: new Map(), mean: [] };
      series.set(strategy, s);
    }
    s.perRepeat.set(repeat, grid.map((x) => interpolate(points, x)));
  }
  for (const s of series.values()) {
    const repeats = [...s.perRepeat.values()];
    s.mean = grid.map(
      (_, i) => repeats.reduce((acc, ys) => acc + ys[i], 0) / repeats.length,
    );
  }
  return new Map([...series].sort(([a], [b]) => a.localeCompare(b)));
}
