import { BenchRecord, CSV_HEADER, parseCsv } from "../src/csv.js";

/** Synthetic 24-row sweep: 2 variants x 3 filter lengths x 2 segment
 * lengths x 2 signal lengths, with deterministic fake timings
 * (pipelined exactly twice as slow as fused). */
export function syntheticRows(): BenchRecord[] {
  const lines = [CSV_HEADER];
  const wall = (variant: string, m: number, n: number, ns: number) => {
    const base = variant === "fused" ? 1 : 2;
    return base * (ns / 1e6) * (1 + m / n);
  };
  for (const variant of ["fused", "pipelined"]) {
    for (const m of [17, 65, 257]) {
      for (const n of [1024, 4096]) {
        for (const ns of [1_000_000, 2_000_000]) {
          const w = wall(variant, m, n, ns);
          lines.push(
            `${variant},r2r,${ns},${m},8,${n},none,single,1,${w},` +
              `${(ns * 8) / w}`,
          );
        }
      }
    }
  }
  return parseCsv(lines.join("\n") + "\n");
}
