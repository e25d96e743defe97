import { describe, expect, it } from "vitest";

import { buildSeries, ChartError, median, parseSpeedup } from "../src/chart.js";

import { syntheticRows } from "./helpers.js";

describe("median", () => {
  it("handles odd and even counts", () => {
    expect(median([3, 1, 2])).toBe(2);
    expect(median([4, 1, 2, 3])).toBe(2.5);
  });
});

describe("parseSpeedup", () => {
  it("extracts baseline and variant", () => {
    expect(parseSpeedup("speedup(pipelined/fused)")).toEqual(
      ["pipelined", "fused"],
    );
    expect(parseSpeedup("wall_time_s")).toBeNull();
  });
});

describe("buildSeries", () => {
  const rows = syntheticRows();

  it("groups by variant with one point per x", () => {
    const series = buildSeries(rows, {
      xAxis: "m", yAxis: "wall_time_s", seriesBy: "variant",
      filter: { n: 4096, ns: 1_000_000 },
    });
    expect(series.map((s) => s.label)).toEqual(["fused", "pipelined"]);
    for (const s of series) {
      expect(s.points.map((p) => p.x)).toEqual([17, 65, 257]);
    }
  });

  it("aggregates duplicate (series, x) cells by median", () => {
    // without an ns filter, each (variant, m, n) holds two ns rows
    const series = buildSeries(rows, {
      xAxis: "m", yAxis: "wall_time_s", seriesBy: "n",
      filter: { variant: "fused" },
    });
    expect(series.map((s) => s.label)).toEqual(["n=1024", "n=4096"]);
    const expected = median([1 * (1 + 17 / 1024), 2 * (1 + 17 / 1024)]);
    expect(series[0].points[0]).toEqual({ x: 17, y: expected });
  });

  it("computes speedup as median(baseline)/median(variant)", () => {
    const series = buildSeries(rows, {
      xAxis: "ns", yAxis: "speedup(pipelined/fused)", seriesBy: "m",
      filter: { n: 1024 },
    });
    expect(series.map((s) => s.label)).toEqual(["m=17", "m=65", "m=257"]);
    for (const s of series) {
      for (const p of s.points) {
        expect(p.y).toBeCloseTo(2.0, 12);
      }
    }
  });

  it("errors when the speedup pair is incomplete, naming x values", () => {
    const onlyFused = rows.filter((r) => r.variant === "fused");
    expect(() =>
      buildSeries(onlyFused, {
        xAxis: "m", yAxis: "speedup(pipelined/fused)", seriesBy: "n",
      }),
    ).toThrow(ChartError);
    try {
      buildSeries(onlyFused, {
        xAxis: "m", yAxis: "speedup(pipelined/fused)", seriesBy: "n",
      });
    } catch (err) {
      expect((err as Error).message).toContain("17, 65, 257");
    }
  });

  it("rejects speedup grouped by variant", () => {
    expect(() =>
      buildSeries(rows, {
        xAxis: "m", yAxis: "speedup(pipelined/fused)", seriesBy: "variant",
      }),
    ).toThrow(/series_by must be m or n/);
  });

  it("rejects unknown y axes and empty filters", () => {
    expect(() =>
      buildSeries(rows, { xAxis: "m", yAxis: "flops", seriesBy: "n" }),
    ).toThrow(ChartError);
    expect(() =>
      buildSeries(rows, {
        xAxis: "m", yAxis: "wall_time_s", seriesBy: "n",
        filter: { mode: "c2c" },
      }),
    ).toThrow(/no rows/);
  });
});
