/** File-level entry point: CSV in, SVG or PNG out (picked by extension). */

import { readFileSync, writeFileSync } from "node:fs";

import { buildSeries, ChartError, ChartSpec, Series } from "./chart.js";
import { parseCsv } from "./csv.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

export function render(
  csvPath: string,
  spec: ChartSpec,
  outPath: string,
): Series[] {
  const records = parseCsv(readFileSync(csvPath, "utf8"));
  const series = buildSeries(records, spec);
  writeSeries(series, spec, outPath);
  return series;
}

/** Render pre-built series (used to overlay series from several specs). */
export function writeSeries(
  series: Series[],
  spec: ChartSpec,
  outPath: string,
): void {
  if (outPath.endsWith(".svg")) {
    writeFileSync(outPath, renderSvg(series, spec));
  } else if (outPath.endsWith(".png")) {
    writeFileSync(outPath, renderPng(series, spec));
  } else {
    throw new ChartError(
      `output path must end in .svg or .png, got ${outPath}`,
    );
  }
}
