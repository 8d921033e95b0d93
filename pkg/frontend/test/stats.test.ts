import { describe, expect, it } from "vitest";

import { groupBy, median, quantile, uniqueSorted } from "../src/stats.js";

describe("quantile", () => {
  it("interpolates linearly between order statistics", () => {
    const xs = [0.0, 0.0, 0.0, 5e-5, 1e-4];
    expect(quantile(xs, 0.5)).toBe(0.0);
    expect(quantile(xs, 0.9)).toBeCloseTo(8e-5, 12);
    expect(quantile(xs, 0.1)).toBe(0.0);
  });

  it("returns endpoints at q = 0 and q = 1", () => {
    const xs = [3, 1, 2];
    expect(quantile(xs, 0)).toBe(1);
    expect(quantile(xs, 1)).toBe(3);
  });

  it("does not reorder its input", () => {
    const xs = [3, 1, 2];
    quantile(xs, 0.5);
    expect(xs).toEqual([3, 1, 2]);
  });

  it("handles a single observation", () => {
    expect(quantile([7], 0.1)).toBe(7);
    expect(quantile([7], 0.9)).toBe(7);
  });

  it("rejects empty samples and out-of-range levels", () => {
    expect(() => quantile([], 0.5)).toThrow(/empty/);
    expect(() => quantile([1], 1.5)).toThrow(/outside/);
    expect(() => quantile([1], -0.1)).toThrow(/outside/);
  });
});

describe("median", () => {
  it("matches the midpoint for odd and even lengths", () => {
    expect(median([5, 1, 3])).toBe(3);
    expect(median([1, 2, 3, 4])).toBe(2.5);
  });
});

describe("groupBy", () => {
  it("partitions while preserving order within groups", () => {
    const groups = groupBy([1, 2, 3, 4, 5], (x) => x % 2);
    expect(groups.get(1)).toEqual([1, 3, 5]);
    expect(groups.get(0)).toEqual([2, 4]);
  });
});

describe("uniqueSorted", () => {
  it("sorts numerically, not lexicographically", () => {
    expect(uniqueSorted([100, 2, 2, 10])).toEqual([2, 10, 100]);
  });
});
