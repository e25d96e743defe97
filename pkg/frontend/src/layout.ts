/** Pixel geometry shared by the SVG and PNG renderers. */

import { ChartError, ChartSpec, Series } from "./chart.js";

export const WIDTH = 640;
export const HEIGHT = 440;
export const MARGIN = { left: 70, right: 150, top: 36, bottom: 48 };

export interface Layout {
  width: number;
  height: number;
  plot: { x0: number; y0: number; x1: number; y1: number };
  mapX(v: number): number;
  mapY(v: number): number;
  xTicks: number[];
  yTicks: number[];
  log: boolean;
}

function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / count / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = mult * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-12 * span; v += s) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-12);
       e <= Math.floor(Math.log10(hi) + 1e-12); e++) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length === 0) ticks.push(lo, hi);
  return ticks;
}

export function computeLayout(series: Series[], spec: ChartSpec): Layout {
  const pts = series.flatMap((s) => s.points);
  if (pts.length === 0) {
    throw new ChartError("nothing to plot: every series is empty");
  }
  const log = spec.scale === "log";
  let xs = pts.map((p) => p.x);
  let ys = pts.map((p) => p.y);
  if (log && (Math.min(...xs) <= 0 || Math.min(...ys) <= 0)) {
    throw new ChartError("log scale needs strictly positive values");
  }
  const t = (v: number) => (log ? Math.log10(v) : v);
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  const xTicks = log ? decadeTicks(xLo, xHi) : niceTicks(xLo, xHi);
  const yTicks = log ? decadeTicks(yLo, yHi) : niceTicks(yLo, yHi);
  xLo = Math.min(xLo, ...xTicks);
  xHi = Math.max(xHi, ...xTicks);
  yLo = Math.min(yLo, ...yTicks);
  yHi = Math.max(yHi, ...yTicks);
  if (xLo === xHi) {
    xLo -= 1;
    xHi += 1;
  }
  if (yLo === yHi) {
    yLo = log ? yLo / 2 : yLo - 1;
    yHi = log ? yHi * 2 : yHi + 1;
  }
  const plot = {
    x0: MARGIN.left,
    y0: MARGIN.top,
    x1: WIDTH - MARGIN.right,
    y1: HEIGHT - MARGIN.bottom,
  };
  const sx = (plot.x1 - plot.x0) / (t(xHi) - t(xLo));
  const sy = (plot.y1 - plot.y0) / (t(yHi) - t(yLo));
  return {
    width: WIDTH,
    height: HEIGHT,
    plot,
    mapX: (v) => plot.x0 + (t(v) - t(xLo)) * sx,
    mapY: (v) => plot.y1 - (t(v) - t(yLo)) * sy,
    xTicks,
    yTicks,
    log,
  };
}

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(0).replace("+", "");
  }
  return Number(v.toPrecision(6)).toString();
}
