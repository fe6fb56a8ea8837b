/** Deterministic SVG renderers (no DOM, plain string assembly). */

import { InterpolatedSeries } from "./interpolate.js";

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 30, right: 150, bottom: 50, left: 60 };

const PALETTE = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

const fmt = (v: number): string => v.toFixed(2);

interface Scale {
  (v: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

function axes(
  x: Scale, y: Scale,
  xDomain: [number, number], yDomain: [number, number],
  xLabel: string, yLabel: string,
): string {
  const parts: string[] = [];
  const x0 = x(xDomain[0]);
  const x1 = x(xDomain[1]);
  const y0 = y(yDomain[0]);
  const y1 = y(yDomain[1]);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`);
  for (let i = 0; i <= 5; i++) {
    const xv = xDomain[0] + ((xDomain[1] - xDomain[0]) * i) / 5;
    const yv = yDomain[0] + ((yDomain[1] - yDomain[0]) * i) / 5;
    parts.push(
      `<text x="${x(xv)}" y="${y0 + 18}" font-size="11" text-anchor="middle">${fmt(xv)}</text>`,
      `<text x="${x0 - 8}" y="${y(yv) + 4}" font-size="11" text-anchor="end">${fmt(yv)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${y0 + 40}" font-size="13" text-anchor="middle">${xLabel}</text>`,
    `<text x="${x0 - 45}" y="${(y0 + y1) / 2}" font-size="13" text-anchor="middle" transform="rotate(-90 ${x0 - 45} ${(y0 + y1) / 2})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

function svgDocument(title: string, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="${MARGIN.top - 10}" font-size="15" text-anchor="middle">${title}</text>`,
    body,
    `</svg>`,
    "",
  ].join("\n");
}

export function learningCurveChart(
  grid: number[],
  series: Map<string, InterpolatedSeries>,
  meanTopAccuracy: number,
): string {
  const xDomain: [number, number] = [grid[0], grid[grid.length - 1]];
  let yMin = meanTopAccuracy;
  let yMax = meanTopAccuracy;
  for (const s of series.values()) {
    yMin = Math.min(yMin, ...s.mean);
    yMax = Math.max(yMax, ...s.mean);
  }
  const pad = 0.05 * (yMax - yMin || 1);
  const yDomain: [number, number] = [yMin - pad, yMax + pad];
  const x = linearScale(xDomain[0], xDomain[1], MARGIN.left, WIDTH - MARGIN.right);
  const y = linearScale(yDomain[0], yDomain[1], HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [
    axes(x, y, xDomain, yDomain, "labeled objects", "mean accuracy"),
  ];
  parts.push(
    `<line x1="${x(xDomain[0])}" y1="${y(meanTopAccuracy)}" x2="${x(xDomain[1])}" y2="${y(meanTopAccuracy)}" stroke="black" stroke-dasharray="6 4"/>`,
    `<text x="${x(xDomain[1]) + 6}" y="${y(meanTopAccuracy) + 4}" font-size="11">top accuracy ${meanTopAccuracy.toFixed(3)}</text>`,
  );
  let legendY = MARGIN.top + 10;
  let colorIdx = 0;
  for (const s of series.values()) {
    const color = PALETTE[colorIdx++ % PALETTE.length];
    const pts = grid
      .map((gx, i) => `${x(gx).toFixed(2)},${y(s.mean[i]).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="2"/>`,
      `<g class="legend"><rect x="${WIDTH - MARGIN.right + 10}" y="${legendY - 9}" width="14" height="3" fill="${color}"/>` +
        `<text x="${WIDTH - MARGIN.right + 30}" y="${legendY - 4}" font-size="12">${s.strategy}</text></g>`,
    );
    legendY += 18;
  }
  return svgDocument("Mean interpolated accuracy vs annotation effort", parts.join("\n"));
}

export function deficiencyChart(means: Map<string, number>): string {
  const names = [...means.keys()].sort();
  const maxVal = Math.max(1.0, ...means.values()) * 1.1;
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y = linearScale(0, maxVal, HEIGHT - MARGIN.bottom, MARGIN.top);
  const band = (x1 - x0) / Math.max(names.length, 1);

  const parts: string[] = [
    `<line x1="${x0}" y1="${y(0)}" x2="${x1}" y2="${y(0)}" stroke="black"/>`,
    `<line x1="${x0}" y1="${y(0)}" x2="${x0}" y2="${y(maxVal)}" stroke="black"/>`,
  ];
  for (let i = 0; i <= 5; i++) {
    const v = (maxVal * i) / 5;
    parts.push(
      `<text x="${x0 - 8}" y="${y(v) + 4}" font-size="11" text-anchor="end">${fmt(v)}</text>`,
    );
  }
  parts.push(
    `<text x="${x0 - 45}" y="${(y(0) + y(maxVal)) / 2}" font-size="13" text-anchor="middle" transform="rotate(-90 ${x0 - 45} ${(y(0) + y(maxVal)) / 2})">mean deficiency vs random</text>`,
  );
  parts.push(
    `<line x1="${x0}" y1="${y(1)}" x2="${x1}" y2="${y(1)}" stroke="black" stroke-dasharray="6 4"/>`,
    `<text x="${x1 + 6}" y="${y(1) + 4}" font-size="11">parity (1.0)</text>`,
  );
  names.forEach((name, i) => {
    const value = means.get(name)!;
    const bx = x0 + i * band + band * 0.2;
    const bw = band * 0.6;
    const color = PALETTE[i % PALETTE.length];
    parts.push(
      `<rect x="${bx.toFixed(2)}" y="${y(value).toFixed(2)}" width="${bw.toFixed(2)}" height="${(y(0) - y(value)).toFixed(2)}" fill="${color}"/>`,
      `<text x="${(bx + bw / 2).toFixed(2)}" y="${y(0) + 18}" font-size="12" text-anchor="middle" class="legend">${name}</text>`,
      `<text x="${(bx + bw / 2).toFixed(2)}" y="${(y(value) - 5).toFixed(2)}" font-size="11" text-anchor="middle">${value.toFixed(3)}</text>`,
    );
  });
  return svgDocument("Deficiency vs random baseline (lower is better)", parts.join("\n"));
}
