export { BenchRecord, CSV_HEADER, CsvError, parseCsv } from "./csv.js";
export {
  buildSeries, ChartError, ChartSpec, median, parseSpeedup, Point, Series,
} from "./chart.js";
export { computeLayout, PALETTE } from "./layout.js";
export { renderSvg } from "./svg.js";
export { renderPng } from "./png.js";
export { render, writeSeries } from "./render.js";
