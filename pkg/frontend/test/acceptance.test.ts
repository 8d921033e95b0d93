/**
 * Component-level acceptance: every figure kind renders from the pilot
 * artifacts, and the rendered phase profile separates its two plateaus.
 */

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";
import { preparePhase } from "../src/figures.js";
import { parseSweepCsv } from "../src/rows.js";
import { uniqueSorted } from "../src/stats.js";

const fixturePath = (name: string): string =>
  fileURLToPath(new URL(`../fixtures/${name}`, import.meta.url));

let dir: string;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "figures-acceptance-"));
  vi.spyOn(console, "log").mockImplementation(() => {});
});

afterAll(() => {
  rmSync(dir, { recursive: true, force: true });
  vi.restoreAllMocks();
});

describe("acceptance", () => {
  it.each([
    ["phase", "pilot_sweep.csv"],
    ["ccdf", "pilot_stats.json"],
    ["bands", "pilot_bands.json"],
    ["theta", "pilot_bands.json"],
  ])("renders the %s figure from the pilot artifacts", async (kind, input) => {
    const out = join(dir, `${kind}.svg`);
    const code = await main([kind, "--input", fixturePath(input), "--out", out]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
  });

  it("orders the phase plateaus: high-multiplier median >= 100x the low one", () => {
    const cells = preparePhase(parseSweepCsv(readFileSync(fixturePath("pilot_sweep.csv"), "utf8")));
    const ms = uniqueSorted(cells.map((c) => c.m));
    const lowM = ms[0]!;
    const highM = ms[ms.length - 1]!;
    for (const rho of uniqueSorted(cells.map((c) => c.rho))) {
      const low = cells.find((c) => c.rho === rho && c.m === lowM)!;
      const high = cells.find((c) => c.rho === rho && c.m === highM)!;
      expect(high.median).toBeGreaterThanOrEqual(100 * low.median);
      expect(high.median).toBeGreaterThanOrEqual(0.01);
    }
  });
});
