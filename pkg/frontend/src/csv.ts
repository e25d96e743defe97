/** Parsing of the bench CSV contract emitted by `olsconv bench`. */

export const CSV_HEADER =
  "variant,mode,ns,m,nfil,n,postproc,precision,workers," +
  "wall_time_s,elements_per_s";

export interface BenchRecord {
  variant: string;
  mode: string;
  ns: number;
  m: number;
  nfil: number;
  n: number;
  postproc: string;
  precision: string;
  workers: number;
  wall_time_s: number;
  elements_per_s: number;
}

export class CsvError extends Error {}

const INT_FIELDS = ["ns", "m", "nfil", "n", "workers"] as const;
const FLOAT_FIELDS = ["wall_time_s", "elements_per_s"] as const;

export function parseCsv(text: string): BenchRecord[] {
  const lines = text.split(/\r?\n/).filter((ln) => ln.trim().length > 0);
  if (lines.length === 0 || lines[0] !== CSV_HEADER) {
    throw new CsvError(
      `bad or missing CSV header; expected "${CSV_HEADER}"`,
    );
  }
  const cols = CSV_HEADER.split(",");
  const records: BenchRecord[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== cols.length) {
      throw new CsvError(
        `line ${i + 1}: expected ${cols.length} fields, got ${fields.length}`,
      );
    }
    const rec: Record<string, string | number> = {};
    cols.forEach((c, j) => (rec[c] = fields[j]));
    for (const f of INT_FIELDS) {
      const v = Number(rec[f]);
      if (!Number.isInteger(v)) {
        throw new CsvError(`line ${i + 1}: field ${f} is not an integer`);
      }
      rec[f] = v;
    }
    for (const f of FLOAT_FIELDS) {
      const v = Number(rec[f]);
      if (!Number.isFinite(v)) {
        throw new CsvError(`line ${i + 1}: field ${f} is not a number`);
      }
      rec[f] = v;
    }
    records.push(rec as unknown as BenchRecord);
  }
  return records;
}
