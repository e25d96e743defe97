/** Raster chart output via pngjs: same layout math as the SVG path, with a
 * small built-in 5x7 bitmap font for labels.  Output bytes are
 * deterministic for identical input. */

import { PNG } from "pngjs";

import { ChartSpec, Series } from "./chart.js";
import { computeLayout, fmtTick, PALETTE } from "./layout.js";

type Rgb = [number, number, number];

const WHITE: Rgb = [255, 255, 255];
const BLACK: Rgb = [0, 0, 0];

function hexColor(hex: string): Rgb {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

// 5x7 glyphs, one byte per row, low 5 bits used
const FONT: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  A: [0x0e, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11],
  B: [0x1e, 0x11, 0x11, 0x1e, 0x11, 0x11, 0x1e],
  C: [0x0e, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0e],
  D: [0x1c, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1c],
  E: [0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x1f],
  F: [0x1f, 0x10, 0x10, 0x1e, 0x10, 0x10, 0x10],
  G: [0x0e, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0f],
  H: [0x11, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11],
  I: [0x0e, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e],
  J: [0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0c],
  K: [0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11],
  L: [0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1f],
  M: [0x11, 0x1b, 0x15, 0x15, 0x11, 0x11, 0x11],
  N: [0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11],
  O: [0x0e, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e],
  P: [0x1e, 0x11, 0x11, 0x1e, 0x10, 0x10, 0x10],
  Q: [0x0e, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0d],
  R: [0x1e, 0x11, 0x11, 0x1e, 0x14, 0x12, 0x11],
  S: [0x0f, 0x10, 0x10, 0x0e, 0x01, 0x01, 0x1e],
  T: [0x1f, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04],
  U: [0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0e],
  V: [0x11, 0x11, 0x11, 0x11, 0x11, 0x0a, 0x04],
  W: [0x11, 0x11, 0x11, 0x15, 0x15, 0x1b, 0x11],
  X: [0x11, 0x11, 0x0a, 0x04, 0x0a, 0x11, 0x11],
  Y: [0x11, 0x11, 0x0a, 0x04, 0x04, 0x04, 0x04],
  Z: [0x1f, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1f],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  "=": [0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00],
  "/": [0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10],
  _: [0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1f],
  "(": [0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02],
  ")": [0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08],
  " ": [0, 0, 0, 0, 0, 0, 0],
};

class Raster {
  png: PNG;

  constructor(width: number, height: number) {
    this.png = new PNG({ width, height });
    this.png.data.fill(255);
  }

  set(x: number, y: number, [r, g, b]: Rgb) {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.png.width || y >= this.png.height) return;
    const i = (y * this.png.width + x) << 2;
    this.png.data[i] = r;
    this.png.data[i + 1] = g;
    this.png.data[i + 2] = b;
    this.png.data[i + 3] = 255;
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Rgb) {
    const steps = Math.max(Math.abs(x1 - x0), Math.abs(y1 - y0), 1);
    for (let i = 0; i <= steps; i++) {
      const t = i / steps;
      this.set(x0 + t * (x1 - x0), y0 + t * (y1 - y0), color);
    }
  }

  rect(x0: number, y0: number, x1: number, y1: number, color: Rgb) {
    this.line(x0, y0, x1, y0, color);
    this.line(x1, y0, x1, y1, color);
    this.line(x1, y1, x0, y1, color);
    this.line(x0, y1, x0, y0, color);
  }

  marker(x: number, y: number, color: Rgb) {
    for (let dy = -1; dy <= 1; dy++) {
      for (let dx = -1; dx <= 1; dx++) {
        this.set(x + dx, y + dy, color);
      }
    }
  }

  text(x: number, y: number, s: string, color: Rgb,
       anchor: "start" | "middle" | "end" = "start") {
    const w = s.length * 6;
    let px = anchor === "middle" ? x - w / 2 : anchor === "end" ? x - w : x;
    px = Math.round(px);
    const py = Math.round(y - 7);
    for (const raw of s) {
      const glyph = FONT[raw] ?? FONT[raw.toUpperCase()] ?? FONT[" "];
      for (let r = 0; r < 7; r++) {
        for (let c = 0; c < 5; c++) {
          if (glyph[r] & (1 << (4 - c))) this.set(px + c, py + r, color);
        }
      }
      px += 6;
    }
  }
}

export function renderPng(series: Series[], spec: ChartSpec): Buffer {
  const lay = computeLayout(series, spec);
  const { plot } = lay;
  const img = new Raster(lay.width, lay.height);
  img.rect(plot.x0, plot.y0, plot.x1, plot.y1, BLACK);
  if (spec.title) {
    img.text(lay.width / 2, 20, spec.title, BLACK, "middle");
  }
  for (const v of lay.xTicks) {
    const x = lay.mapX(v);
    img.line(x, plot.y1, x, plot.y1 + 5, BLACK);
    img.text(x, plot.y1 + 18, fmtTick(v), BLACK, "middle");
  }
  for (const v of lay.yTicks) {
    const y = lay.mapY(v);
    img.line(plot.x0 - 5, y, plot.x0, y, BLACK);
    img.text(plot.x0 - 8, y + 4, fmtTick(v), BLACK, "end");
  }
  img.text((plot.x0 + plot.x1) / 2, lay.height - 10, spec.xAxis, BLACK,
           "middle");
  img.text(6, 16, spec.yAxis, BLACK, "start");
  series.forEach((s, i) => {
    const color = hexColor(PALETTE[i % PALETTE.length]);
    for (let j = 1; j < s.points.length; j++) {
      img.line(
        lay.mapX(s.points[j - 1].x), lay.mapY(s.points[j - 1].y),
        lay.mapX(s.points[j].x), lay.mapY(s.points[j].y), color,
      );
    }
    for (const p of s.points) {
      img.marker(lay.mapX(p.x), lay.mapY(p.y), color);
    }
    const ly = plot.y0 + 14 + i * 16;
    img.line(plot.x1 + 10, ly - 4, plot.x1 + 30, ly - 4, color);
    img.text(plot.x1 + 34, ly + 3, s.label, BLACK);
  });
  return PNG.sync.write(img.png);
}
