/** Deterministic SVG chart output (no timestamps, fixed ordering). */

import { ChartSpec, Series } from "./chart.js";
import { computeLayout, fmtTick, PALETTE } from "./layout.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const r2 = (v: number) => Number(v.toFixed(2));

export function renderSvg(series: Series[], spec: ChartSpec): string {
  const lay = computeLayout(series, spec);
  const { plot } = lay;
  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${lay.width}" ` +
      `height="${lay.height}" viewBox="0 0 ${lay.width} ${lay.height}" ` +
      `font-family="monospace" font-size="11">`,
  );
  out.push(`<rect width="${lay.width}" height="${lay.height}" fill="white"/>`);
  if (spec.title) {
    out.push(
      `<text x="${lay.width / 2}" y="20" text-anchor="middle" ` +
        `font-size="13">${esc(spec.title)}</text>`,
    );
  }
  out.push(
    `<rect x="${plot.x0}" y="${plot.y0}" width="${plot.x1 - plot.x0}" ` +
      `height="${plot.y1 - plot.y0}" fill="none" stroke="black"/>`,
  );
  for (const v of lay.xTicks) {
    const x = r2(lay.mapX(v));
    out.push(
      `<line x1="${x}" y1="${plot.y1}" x2="${x}" y2="${plot.y1 + 5}" ` +
        `stroke="black"/>`,
      `<text x="${x}" y="${plot.y1 + 18}" text-anchor="middle">` +
        `${esc(fmtTick(v))}</text>`,
    );
  }
  for (const v of lay.yTicks) {
    const y = r2(lay.mapY(v));
    out.push(
      `<line x1="${plot.x0 - 5}" y1="${y}" x2="${plot.x0}" y2="${y}" ` +
        `stroke="black"/>`,
      `<text x="${plot.x0 - 8}" y="${y + 4}" text-anchor="end">` +
        `${esc(fmtTick(v))}</text>`,
    );
  }
  out.push(
    `<text x="${(plot.x0 + plot.x1) / 2}" y="${lay.height - 10}" ` +
      `text-anchor="middle">${esc(spec.xAxis)}</text>`,
    `<text x="16" y="${(plot.y0 + plot.y1) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${(plot.y0 + plot.y1) / 2})">` +
      `${esc(spec.yAxis)}</text>`,
  );
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.points
      .map((p) => `${r2(lay.mapX(p.x))},${r2(lay.mapY(p.y))}`)
      .join(" ");
    out.push(
      `<polyline class="series" fill="none" stroke="${color}" ` +
        `stroke-width="1.5" points="${pts}"/>`,
    );
    for (const p of s.points) {
      out.push(
        `<circle class="point" cx="${r2(lay.mapX(p.x))}" ` +
          `cy="${r2(lay.mapY(p.y))}" r="3" fill="${color}"/>`,
      );
    }
    const ly = plot.y0 + 14 + i * 16;
    out.push(
      `<line x1="${plot.x1 + 10}" y1="${ly - 4}" x2="${plot.x1 + 30}" ` +
        `y2="${ly - 4}" stroke="${color}" stroke-width="1.5"/>`,
      `<text class="legend" x="${plot.x1 + 34}" y="${ly}">` +
        `${esc(s.label)}</text>`,
    );
  });
  out.push("</svg>");
  return out.join("\n") + "\n";
}
