import { describe, expect, it } from "vitest";

import { CurveTable, curveKey } from "../src/csv.js";
import { interpolate, interpolateAll, sharedGrid } from "../src/interpolate.js";

const pts = (pairs: [number, number][]) =>
  pairs.map(([labeledObjects, accuracy]) => ({ labeledObjects, accuracy }));

describe("interpolate", () => {
  const curve = pts([[10, 0.2], [20, 0.4], [40, 0.5]]);

  it("returns exact node values", () => {
    expect(interpolate(curve, 10)).toBeCloseTo(0.2, 12);
    expect(interpolate(curve, 20)).toBeCloseTo(0.4, 12);
    expect(interpolate(curve, 40)).toBeCloseTo(0.5, 12);
  });

  it("is linear between nodes", () => {
    expect(interpolate(curve, 15)).toBeCloseTo(0.3, 12);
    expect(interpolate(curve, 25)).toBeCloseTo(0.4 + (0.1 * 5) / 20, 12);
  });

  it("rejects extrapolation", () => {
    expect(() => interpolate(curve, 9)).toThrow(/extrapolation/);
    expect(() => interpolate(curve, 41)).toThrow(/extrapolation/);
  });

  it("rejects empty curves", () => {
    expect(() => interpolate([], 0)).toThrow(/empty/);
  });
});

describe("sharedGrid", () => {
  it("covers the intersection of curve ranges", () => {
    const table: CurveTable = new Map([
      [curveKey(0, "a"), pts([[10, 0.1], [50, 0.5]])],
      [curveKey(0, "b"), pts([[20, 0.1], [40, 0.5]])],
    ]);
    const grid = sharedGrid(table, 5);
    expect(grid).toEqual([20, 25, 30, 35, 40]);
  });

  it("rejects disjoint ranges", () => {
    const table: CurveTable = new Map([
      [curveKey(0, "a"), pts([[0, 0.1], [10, 0.5]])],
      [curveKey(0, "b"), pts([[20, 0.1], [40, 0.5]])],
    ]);
    expect(() => sharedGrid(table, 5)).toThrow(/share no effort range/);
  });
});

describe("interpolateAll", () => {
  it("averages repeats per strategy", () => {
    const table: CurveTable = new Map([
      [curveKey(0, "a"), pts([[0, 0.0], [10, 1.0]])],
      [curveKey(1, "a"), pts([[0, 0.5], [10, 0.5]])],
    ]);
    const grid = [0, 5, 10];
    const series = interpolateAll(table, grid);
    expect(series.get("a")!.mean).toEqual([0.25, 0.5, 0.75]);
    expect(series.get("a")!.perRepeat.get(0)).toEqual([0.0, 0.5, 1.0]);
  });

  it("orders strategies alphabetically", () => {
    const table: CurveTable = new Map([
      [curveKey(0, "z"), pts([[0, 0.1], [10, 0.2]])],
      [curveKey(0, "a"), pts([[0, 0.1], [10, 0.2]])],
    ]);
    const names = [...interpolateAll(table, [0, 10]).keys()];
    expect(names).toEqual(["a", "z"]);
  });
});
