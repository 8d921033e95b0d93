/**
 * Typed readers for the simulation pipeline's artifacts: the sweep CSV and
 * the stats/bands JSON documents.  Readers validate exactly the fields the
 * figures consume and fail loudly on anything missing or malformed.
 */

export class InputError extends Error {}

// ---------------------------------------------------------------------------
// Sweep CSV
// ---------------------------------------------------------------------------

export interface SweepRow {
  N: number;
  alpha: number;
  nu: number;
  rho: number;
  r: number;
  p: number;
  p_multiplier: number;
  /** 64-bit identifier; kept as text to avoid double rounding. */
  seed: string;
  a0_size: number;
  af_size: number;
  af_fraction: number;
  rounds: number;
  l1_fraction: number;
  core_fraction: number;
  wall_time_ms: number;
}

export const SWEEP_COLUMNS = [
  "N", "alpha", "nu", "rho", "r", "p", "p_multiplier", "seed",
  "a0_size", "af_size", "af_fraction", "rounds",
  "l1_fraction", "core_fraction", "wall_time_ms",
] as const;

const NUMERIC_COLUMNS = SWEEP_COLUMNS.filter((c) => c !== "seed");

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split("\n").filter((l) => l.trim().length > 0);
  if (lines.length === 0) throw new InputError("empty input: no header row");
  const header = lines[0]!.split(",").map((h) => h.trim());
  const missing = SWEEP_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new InputError(`missing columns: ${missing.join(", ")}`);
  }
  if (lines.length < 2) throw new InputError("empty input: no data rows");

  const at = new Map(header.map((h, i) => [h, i]));
  return lines.slice(1).map((line, k) => {
    const fields = line.split(",");
    if (fields.length !== header.length) {
      throw new InputError(
        `row ${k + 2}: ${fields.length} fields, header has ${header.length}`
      );
    }
    const row: Record<string, number | string> = {
      seed: fields[at.get("seed")!]!.trim(),
    };
    for (const col of NUMERIC_COLUMNS) {
      const raw = fields[at.get(col)!]!.trim();
      const value = Number(raw);
      if (raw === "" || Number.isNaN(value)) {
        throw new InputError(`row ${k + 2}: column ${col} is not numeric: "${raw}"`);
      }
      row[col] = value;
    }
    return row as unknown as SweepRow;
  });
}

// ---------------------------------------------------------------------------
// Stats JSON (degree histogram + tail estimate)
// ---------------------------------------------------------------------------

export interface StatsDoc {
  N: number;
  alpha: number;
  nu: number;
  mean_degree: number;
  degree_histogram: { values: number[]; counts: number[] };
  hill_exponent: number | null;
}

export function parseStatsJson(text: string): StatsDoc {
  const doc = parseJson(text);
  for (const key of ["N", "alpha", "nu", "mean_degree"]) {
    requireNumber(doc, key);
  }
  const hist = doc["degree_histogram"];
  if (
    typeof hist !== "object" || hist === null ||
    !Array.isArray((hist as Record<string, unknown>)["values"]) ||
    !Array.isArray((hist as Record<string, unknown>)["counts"])
  ) {
    throw new InputError("missing columns: degree_histogram.values/counts");
  }
  const values = (hist as { values: unknown[] }).values.map(toNumber("degree_histogram.values"));
  const counts = (hist as { counts: unknown[] }).counts.map(toNumber("degree_histogram.counts"));
  if (values.length === 0 || values.length !== counts.length) {
    throw new InputError("empty input: degree histogram has no usable bins");
  }
  const hill = doc["hill_exponent"];
  if (hill !== null && typeof hill !== "number") {
    throw new InputError("hill_exponent must be a number or null");
  }
  return {
    N: doc["N"] as number,
    alpha: doc["alpha"] as number,
    nu: doc["nu"] as number,
    mean_degree: doc["mean_degree"] as number,
    degree_histogram: { values, counts },
    hill_exponent: hill as number | null,
  };
}

// ---------------------------------------------------------------------------
// Bands JSON (decomposition + census + block diagnostics)
// ---------------------------------------------------------------------------

export interface CensusRow {
  band: number;
  count: number;
  lo: number;
  hi: number | null;
  in_bounds: boolean;
}

export interface BandsDoc {
  N: number;
  alpha: number;
  epsilon: number;
  C: number;
  T: number;
  census: CensusRow[];
  census_remainder: number;
  Theta_i: number[];
}

export function parseBandsJson(text: string): BandsDoc {
  const doc = parseJson(text);
  for (const key of ["N", "alpha", "epsilon", "C", "T", "census_remainder"]) {
    requireNumber(doc, key);
  }
  const rows = doc["census"];
  if (!Array.isArray(rows)) throw new InputError("missing columns: census");
  const census = rows.map((r, i) => {
    if (typeof r !== "object" || r === null) {
      throw new InputError(`census[${i}] is not an object`);
    }
    const row = r as Record<string, unknown>;
    for (const key of ["band", "count", "lo"]) {
      if (typeof row[key] !== "number") {
        throw new InputError(`missing columns: census[${i}].${key}`);
      }
    }
    const hi = row["hi"];
    if (hi !== null && typeof hi !== "number") {
      throw new InputError(`census[${i}].hi must be a number or null`);
    }
    return {
      band: row["band"] as number,
      count: row["count"] as number,
      lo: row["lo"] as number,
      hi: hi as number | null,
      in_bounds: Boolean(row["in_bounds"]),
    };
  });
  if (census.length === 0) throw new InputError("empty input: census has no bands");
  const thetas = doc["Theta_i"];
  if (!Array.isArray(thetas)) throw new InputError("missing columns: Theta_i");
  return {
    N: doc["N"] as number,
    alpha: doc["alpha"] as number,
    epsilon: doc["epsilon"] as number,
    C: doc["C"] as number,
    T: doc["T"] as number,
    census,
    census_remainder: doc["census_remainder"] as number,
    Theta_i: thetas.map(toNumber("Theta_i")),
  };
}

// ---------------------------------------------------------------------------

function parseJson(text: string): Record<string, unknown> {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new InputError(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new InputError("top level is not an object");
  }
  return doc as Record<string, unknown>;
}

function requireNumber(doc: Record<string, unknown>, key: string): void {
  if (typeof doc[key] !== "number") {
    throw new InputError(`missing columns: ${key}`);
  }
}

function toNumber(what: string) {
  return (v: unknown): number => {
    if (typeof v !== "number") throw new InputError(`${what} has a non-numeric entry`);
    return v;
  };
}
