import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  InputError,
  SWEEP_COLUMNS,
  parseBandsJson,
  parseStatsJson,
  parseSweepCsv,
} from "../src/rows.js";

const fixture = (name: string): string =>
  readFileSync(fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url)), "utf8");

const HEADER = SWEEP_COLUMNS.join(",");
const ROW = "20000,0.75,1.0,0.5,2,1.36e-05,0.01,3230166998763350396,0,0,0.0,0,0.72,0.49,138.1";

describe("parseSweepCsv", () => {
  it("reads the pilot sweep", () => {
    const rows = parseSweepCsv(fixture("pilot_sweep.csv"));
    expect(rows).toHaveLength(50);
    const first = rows[0]!;
    expect(first.N).toBe(20000);
    expect(first.p_multiplier).toBe(0.01);
    expect(first.af_fraction).toBe(0.0);
  });

  it("keeps the seed as text so 64-bit values survive", () => {
    const rows = parseSweepCsv(`${HEADER}\n${ROW}\n`);
    expect(rows[0]!.seed).toBe("3230166998763350396");
    // the literal would lose its last digits as a double
    expect(String(Number(rows[0]!.seed))).not.toBe(rows[0]!.seed);
  });

  it("accepts extra columns and any column order", () => {
    const cols = [...SWEEP_COLUMNS].reverse().join(",") + ",extra";
    const vals = ROW.split(",").reverse().join(",") + ",ignored";
    const rows = parseSweepCsv(`${cols}\n${vals}\n`);
    expect(rows[0]!.N).toBe(20000);
    expect(rows[0]!.wall_time_ms).toBeCloseTo(138.1);
  });

  it("names every missing column", () => {
    expect(() => parseSweepCsv("N,alpha\n1,2\n")).toThrow(InputError);
    try {
      parseSweepCsv("N,alpha\n1,2\n");
    } catch (err) {
      expect((err as Error).message).toContain("missing columns:");
      expect((err as Error).message).toContain("af_fraction");
      expect((err as Error).message).toContain("p_multiplier");
    }
  });

  it("rejects empty input and header-only input separately", () => {
    expect(() => parseSweepCsv("")).toThrow(/no header row/);
    expect(() => parseSweepCsv(`${HEADER}\n`)).toThrow(/no data rows/);
  });

  it("rejects non-numeric fields with the row and column named", () => {
    const bad = ROW.replace("0.72", "oops");
    expect(() => parseSweepCsv(`${HEADER}\n${bad}\n`)).toThrow(/row 2.*l1_fraction.*oops/);
  });

  it("rejects rows with the wrong field count", () => {
    expect(() => parseSweepCsv(`${HEADER}\n1,2,3\n`)).toThrow(/row 2: 3 fields/);
  });
});

describe("parseStatsJson", () => {
  it("reads the pilot stats document", () => {
    const doc = parseStatsJson(fixture("pilot_stats.json"));
    expect(doc.N).toBe(50000);
    expect(doc.alpha).toBeCloseTo(0.7);
    expect(doc.hill_exponent).toBeCloseTo(2.459, 3);
    expect(doc.degree_histogram.values.length).toBe(doc.degree_histogram.counts.length);
  });

  it("accepts a null tail exponent", () => {
    const doc = parseStatsJson(
      JSON.stringify({
        N: 10, alpha: 0.7, nu: 1, mean_degree: 2,
        degree_histogram: { values: [1], counts: [10] },
        hill_exponent: null,
      }),
    );
    expect(doc.hill_exponent).toBeNull();
  });

  it("rejects documents without a histogram", () => {
    expect(() => parseStatsJson(JSON.stringify({ N: 1, alpha: 1, nu: 1, mean_degree: 1 })))
      .toThrow(/degree_histogram/);
  });

  it("rejects mismatched histogram arrays", () => {
    expect(() =>
      parseStatsJson(
        JSON.stringify({
          N: 1, alpha: 1, nu: 1, mean_degree: 1,
          degree_histogram: { values: [1, 2], counts: [3] },
          hill_exponent: null,
        }),
      ),
    ).toThrow(/no usable bins/);
  });

  it("rejects non-JSON input", () => {
    expect(() => parseStatsJson("N,alpha\n1,2\n")).toThrow(/not valid JSON/);
  });
});

describe("parseBandsJson", () => {
  it("reads the pilot bands document", () => {
    const doc = parseBandsJson(fixture("pilot_bands.json"));
    expect(doc.T).toBe(2);
    expect(doc.census).toHaveLength(2);
    expect(doc.census[0]!.hi).toBeNull();
    expect(doc.census[1]!.hi).toBeCloseTo(6003.7, 1);
    expect(doc.census_remainder).toBe(195486);
    expect(doc.Theta_i).toHaveLength(2);
  });

  it("rejects an empty census", () => {
    const base = { N: 1, alpha: 1, epsilon: 0.1, C: 3.5, T: 0, census_remainder: 0, Theta_i: [] };
    expect(() => parseBandsJson(JSON.stringify({ ...base, census: [] })))
      .toThrow(/census has no bands/);
  });

  it("rejects census rows missing their bounds", () => {
    const base = {
      N: 1, alpha: 1, epsilon: 0.1, C: 3.5, T: 1, census_remainder: 0, Theta_i: [1],
      census: [{ band: 0, count: 5 }],
    };
    expect(() => parseBandsJson(JSON.stringify(base))).toThrow(/census\[0\]\.lo/);
  });

  it("names missing top-level numbers", () => {
    expect(() => parseBandsJson("{}")).toThrow(/missing columns: N/);
  });
});
