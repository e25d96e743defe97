/** Series construction: grouping, median aggregation, speedup ratios. */

import { BenchRecord } from "./csv.js";

export type XAxis = "ns" | "nfil" | "m";
export type SeriesBy = "m" | "n" | "variant";
export type Scale = "linear" | "log";

export interface ChartSpec {
  xAxis: XAxis;
  /** "wall_time_s" | "elements_per_s" | "speedup(baseline/variant)" */
  yAxis: string;
  seriesBy: SeriesBy;
  scale?: Scale;
  /** exact-match row filters, e.g. {mode: "r2r", nfil: 8} */
  filter?: Partial<Record<keyof BenchRecord, string | number>>;
  title?: string;
}

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export class ChartError extends Error {}

export function median(values: number[]): number {
  const v = [...values].sort((a, b) => a - b);
  const mid = v.length >> 1;
  return v.length % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

export function parseSpeedup(yAxis: string): [string, string] | null {
  const m = /^speedup\(([^/()]+)\/([^/()]+)\)$/.exec(yAxis);
  return m ? [m[1], m[2]] : null;
}

function applyFilter(records: BenchRecord[], spec: ChartSpec): BenchRecord[] {
  const filter = spec.filter ?? {};
  return records.filter((r) =>
    Object.entries(filter).every(
      ([k, v]) => String(r[k as keyof BenchRecord]) === String(v),
    ),
  );
}

function seriesLabel(spec: ChartSpec, r: BenchRecord): string {
  const v = r[spec.seriesBy];
  return spec.seriesBy === "variant" ? String(v) : `${spec.seriesBy}=${v}`;
}

function sortedLabels(labels: Set<string>): string[] {
  return [...labels].sort((a, b) => {
    const na = Number(a.split("=")[1]);
    const nb = Number(b.split("=")[1]);
    if (Number.isFinite(na) && Number.isFinite(nb)) return na - nb;
    return a < b ? -1 : a > b ? 1 : 0;
  });
}

/** Group filtered records into chart series; y values sharing one
 * (series, x) cell are reduced to their median. */
export function buildSeries(
  records: BenchRecord[],
  spec: ChartSpec,
): Series[] {
  const speedup = parseSpeedup(spec.yAxis);
  if (!speedup && spec.yAxis !== "wall_time_s"
      && spec.yAxis !== "elements_per_s") {
    throw new ChartError(`unknown y axis ${JSON.stringify(spec.yAxis)}`);
  }
  if (speedup && spec.seriesBy === "variant") {
    throw new ChartError(
      "speedup charts consume both variants; series_by must be m or n",
    );
  }
  const rows = applyFilter(records, spec);
  if (rows.length === 0) {
    throw new ChartError("no rows left after filtering");
  }
  if (speedup) return buildSpeedupSeries(rows, spec, speedup);

  const cells = new Map<string, Map<number, number[]>>();
  const labels = new Set<string>();
  for (const r of rows) {
    const label = seriesLabel(spec, r);
    labels.add(label);
    const x = r[spec.xAxis];
    const y = r[spec.yAxis as "wall_time_s" | "elements_per_s"];
    const byX = cells.get(label) ?? new Map<number, number[]>();
    cells.set(label, byX);
    byX.set(x, [...(byX.get(x) ?? []), y]);
  }
  return sortedLabels(labels).map((label) => {
    const byX = cells.get(label)!;
    const points = [...byX.entries()]
      .map(([x, ys]) => ({ x, y: median(ys) }))
      .sort((a, b) => a.x - b.x);
    return { label, points };
  });
}

function buildSpeedupSeries(
  rows: BenchRecord[],
  spec: ChartSpec,
  [baseline, variant]: [string, string],
): Series[] {
  // medians per (series, x, variant)
  const cells = new Map<string, Map<number, Map<string, number[]>>>();
  const labels = new Set<string>();
  for (const r of rows) {
    if (r.variant !== baseline && r.variant !== variant) continue;
    const label = seriesLabel(spec, r);
    labels.add(label);
    const byX = cells.get(label) ?? new Map();
    cells.set(label, byX);
    const byVar = byX.get(r[spec.xAxis]) ?? new Map<string, number[]>();
    byX.set(r[spec.xAxis], byVar);
    byVar.set(r.variant, [...(byVar.get(r.variant) ?? []), r.wall_time_s]);
  }
  if (labels.size === 0) {
    throw new ChartError(
      `no rows for variants ${baseline} or ${variant}`,
    );
  }
  const missing = new Set<number>();
  const series: Series[] = sortedLabels(labels).map((label) => {
    const byX = cells.get(label)!;
    const points: Point[] = [];
    for (const [x, byVar] of [...byX.entries()].sort((a, b) => a[0] - b[0])) {
      const base = byVar.get(baseline);
      const vari = byVar.get(variant);
      if (!base || !vari) {
        missing.add(x);
        continue;
      }
      points.push({ x, y: median(base) / median(vari) });
    }
    return { label, points };
  });
  if (missing.size > 0) {
    const xs = [...missing].sort((a, b) => a - b).join(", ");
    throw new ChartError(
      `speedup(${baseline}/${variant}) needs both variants at every x; ` +
        `missing a pair at ${spec.xAxis} = ${xs}`,
    );
  }
  return series;
}
