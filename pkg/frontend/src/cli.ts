#!/usr/bin/env node
/**
 * Chart the CSV produced by `olsconv bench`.
 *
 * Single chart:
 *   node dist/cli.js render --csv results.csv --x m --y wall_time_s \
 *        --series-by variant --scale log --filter mode=r2r --out time.svg
 *
 * Standard figure set (time/throughput vs signal length and filter count,
 * time vs filter length per segment size, speedup curves):
 *   node dist/cli.js suite --csv results.csv --out-dir charts/
 */

import { existsSync, mkdirSync, readFileSync } from "node:fs";
import { join } from "node:path";

import { buildSeries, ChartError, ChartSpec, SeriesBy, XAxis } from "./chart.js";
import { BenchRecord, CsvError, parseCsv } from "./csv.js";
import { render, writeSeries } from "./render.js";

interface Args {
  command: string;
  flags: Map<string, string[]>;
}

function parseArgs(argv: string[]): Args {
  if (argv.length === 0 || argv[0].startsWith("--")) {
    throw new ChartError("usage: cli.js <render|suite> [--flag value ...]");
  }
  const flags = new Map<string, string[]>();
  for (let i = 1; i < argv.length; i += 2) {
    const k = argv[i];
    const v = argv[i + 1];
    if (!k.startsWith("--") || v === undefined) {
      throw new ChartError(`malformed flag near ${k}`);
    }
    const key = k.slice(2);
    flags.set(key, [...(flags.get(key) ?? []), v]);
  }
  return { command: argv[0], flags };
}

function one(flags: Map<string, string[]>, key: string): string | undefined {
  const v = flags.get(key);
  if (v && v.length > 1) throw new ChartError(`--${key} given twice`);
  return v?.[0];
}

function need(flags: Map<string, string[]>, key: string): string {
  const v = one(flags, key);
  if (v === undefined) throw new ChartError(`missing required --${key}`);
  return v;
}

function parseFilter(
  flags: Map<string, string[]>,
): Partial<Record<keyof BenchRecord, string>> {
  const out: Record<string, string> = {};
  for (const f of flags.get("filter") ?? []) {
    const eq = f.indexOf("=");
    if (eq < 1) throw new ChartError(`--filter needs key=value, got ${f}`);
    out[f.slice(0, eq)] = f.slice(eq + 1);
  }
  return out as Partial<Record<keyof BenchRecord, string>>;
}

function cmdRender(flags: Map<string, string[]>): void {
  const spec: ChartSpec = {
    xAxis: need(flags, "x") as XAxis,
    yAxis: need(flags, "y"),
    seriesBy: need(flags, "series-by") as SeriesBy,
    scale: (one(flags, "scale") ?? "linear") as "linear" | "log",
    filter: parseFilter(flags),
    title: one(flags, "title"),
  };
  const out = need(flags, "out");
  const series = render(need(flags, "csv"), spec, out);
  const points = series.reduce((acc, s) => acc + s.points.length, 0);
  console.log(`wrote ${out} (${series.length} series, ${points} points)`);
}

function cmdSuite(flags: Map<string, string[]>): void {
  const csvPath = need(flags, "csv");
  const outDir = need(flags, "out-dir");
  const records = parseCsv(readFileSync(csvPath, "utf8"));
  if (!existsSync(outDir)) mkdirSync(outDir, { recursive: true });
  const filter = parseFilter(flags);

  const charts: Array<[string, ChartSpec]> = [
    ["time_vs_ns", { xAxis: "ns", yAxis: "wall_time_s",
                     seriesBy: "variant", scale: "log", filter,
                     title: "execution time vs signal length" }],
    ["throughput_vs_ns", { xAxis: "ns", yAxis: "elements_per_s",
                           seriesBy: "variant", scale: "log", filter,
                           title: "elements per second vs signal length" }],
    ["time_vs_nfil", { xAxis: "nfil", yAxis: "wall_time_s",
                       seriesBy: "variant", scale: "log", filter,
                       title: "execution time vs filter count" }],
    ["throughput_vs_nfil", { xAxis: "nfil", yAxis: "elements_per_s",
                             seriesBy: "variant", scale: "log", filter,
                             title: "elements per second vs filter count" }],
    ["speedup_vs_ns", { xAxis: "ns", yAxis: "speedup(pipelined/fused)",
                        seriesBy: "m", scale: "linear", filter,
                        title: "speedup of fused over pipelined" }],
  ];
  for (const [name, spec] of charts) {
    try {
      const series = buildSeries(records, spec);
      writeSeries(series, spec, join(outDir, `${name}.svg`));
      console.log(`wrote ${join(outDir, `${name}.svg`)}`);
    } catch (err) {
      if (err instanceof ChartError) {
        console.error(`skip ${name}: ${err.message}`);
      } else {
        throw err;
      }
    }
  }
  // segment-length crossover chart: fused per segment length, with the
  // pipelined curve overlaid as the reference
  try {
    const spec: ChartSpec = {
      xAxis: "m", yAxis: "wall_time_s", seriesBy: "n", scale: "log",
      filter: { ...filter, variant: "fused" },
      title: "execution time vs filter length per segment length",
    };
    const series = buildSeries(records, spec);
    try {
      const pipeline = buildSeries(records, {
        ...spec, seriesBy: "variant",
        filter: { ...filter, variant: "pipelined" },
      });
      series.push(...pipeline);
    } catch {
      // pipelined rows absent; plot the fused curves alone
    }
    writeSeries(series, spec, join(outDir, "time_vs_m_by_n.svg"));
    console.log(`wrote ${join(outDir, "time_vs_m_by_n.svg")}`);
  } catch (err) {
    if (err instanceof ChartError) {
      console.error(`skip time_vs_m_by_n: ${err.message}`);
    } else {
      throw err;
    }
  }
}

export function main(argv: string[]): number {
  try {
    const { command, flags } = parseArgs(argv);
    if (command === "render") cmdRender(flags);
    else if (command === "suite") cmdSuite(flags);
    else throw new ChartError(`unknown command ${command}`);
    return 0;
  } catch (err) {
    if (err instanceof ChartError || err instanceof CsvError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      console.error(`error: no such file: ${(err as any).path}`);
      return 2;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
