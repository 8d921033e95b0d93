/**
 * Figure builders.  Each takes already-parsed input plus display options and
 * returns a complete SVG document as a string.  Plotted marks carry data-*
 * attributes (series, coordinates) so tests can assert on geometry-free
 * facts without parsing layout.
 */

import { InputError, type BandsDoc, type StatsDoc, type SweepRow } from "./rows.js";
import { groupBy, median, quantile, uniqueSorted } from "./stats.js";
import { PALETTE, chartFrame, esc, fmtTick, legend, type LegendEntry } from "./svg.js";

export interface FigureOptions {
  title?: string;
  width?: number;
  height?: number;
}

// ---------------------------------------------------------------------------
// phase: final infected fraction vs. seeding-strength multiplier
// ---------------------------------------------------------------------------

export interface PhaseCell {
  rho: number;
  m: number;
  median: number;
  q10: number;
  q90: number;
  n: number;
}

/** Collapse seed replicates to median and [10%, 90%] band per (rho, m). */
export function preparePhase(rows: SweepRow[]): PhaseCell[] {
  const cells: PhaseCell[] = [];
  for (const [rho, byRho] of groupBy(rows, (r) => r.rho)) {
    for (const [m, group] of groupBy(byRho, (r) => r.p_multiplier)) {
      const fractions = group.map((r) => r.af_fraction);
      cells.push({
        rho,
        m,
        median: median(fractions),
        q10: quantile(fractions, 0.1),
        q90: quantile(fractions, 0.9),
        n: fractions.length,
      });
    }
  }
  cells.sort((a, b) => a.rho - b.rho || a.m - b.m);
  return cells;
}

export function buildPhaseFigure(rows: SweepRow[], opts: FigureOptions = {}): string {
  const cells = preparePhase(rows);
  const ms = cells.map((c) => c.m);
  if (ms.some((m) => m <= 0)) {
    throw new InputError("p_multiplier must be positive for the log axis");
  }
  const rhos = uniqueSorted(cells.map((c) => c.rho));

  const frame = chartFrame({
    title: opts.title ?? "Activation phase profile",
    subtitle: `median and 10–90% band over ${Math.max(...cells.map((c) => c.n))} seeds per point`,
    width: opts.width,
    height: opts.height,
    x: { label: "infection probability multiplier", min: Math.min(...ms), max: Math.max(...ms), log: true },
    y: { label: "final infected fraction", min: 0, max: 1 },
  });

  let body = "";
  rhos.forEach((rho, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const series = cells.filter((c) => c.rho === rho);
    const band =
      series.map((c, j) => `${j ? "L" : "M"}${frame.xOf(c.m).toFixed(2)},${frame.yOf(c.q90).toFixed(2)}`).join(" ") +
      " " +
      [...series].reverse().map((c) => `L${frame.xOf(c.m).toFixed(2)},${frame.yOf(c.q10).toFixed(2)}`).join(" ") +
      " Z";
    body += `<path d="${band}" fill="${color}" fill-opacity="0.15" stroke="none" data-band="rho=${rho}"/>\n`;
    const line = series
      .map((c, j) => `${j ? "L" : "M"}${frame.xOf(c.m).toFixed(2)},${frame.yOf(c.median).toFixed(2)}`)
      .join(" ");
    body += `<path d="${line}" fill="none" stroke="${color}" stroke-width="1.6" data-series="rho=${rho}"/>\n`;
    for (const c of series) {
      body +=
        `<circle cx="${frame.xOf(c.m).toFixed(2)}" cy="${frame.yOf(c.median).toFixed(2)}" r="2.4" fill="${color}"` +
        ` data-point="phase" data-rho="${c.rho}" data-m="${c.m}" data-median="${c.median}"/>\n`;
    }
  });

  body += legend(
    rhos.map((rho, i) => ({ color: PALETTE[i % PALETTE.length]!, label: `ρ = ${rho}` })),
    frame.x0 + 8,
    frame.y0 + 6,
  );
  return frame.head + body + frame.foot;
}

// ---------------------------------------------------------------------------
// ccdf: degree complementary CDF with tail-slope guides
// ---------------------------------------------------------------------------

export interface CcdfPoint {
  k: number;
  p: number;
}

/** P(K >= k) at each observed degree k >= 1, from the degree histogram. */
export function prepareCcdf(doc: StatsDoc): CcdfPoint[] {
  const total = doc.degree_histogram.counts.reduce((a, b) => a + b, 0);
  if (total <= 0) throw new InputError("degree histogram is empty");
  const points: CcdfPoint[] = [];
  let above = total;
  for (let i = 0; i < doc.degree_histogram.values.length; i++) {
    const k = doc.degree_histogram.values[i]!;
    if (k >= 1) points.push({ k, p: above / total });
    above -= doc.degree_histogram.counts[i]!;
  }
  if (points.length === 0) throw new InputError("no degrees >= 1 in histogram");
  return points;
}

export function buildCcdfFigure(doc: StatsDoc, opts: FigureOptions = {}): string {
  const points = prepareCcdf(doc);
  const kMax = points[points.length - 1]!.k;
  const pMin = Math.min(...points.map((p) => p.p));

  const frame = chartFrame({
    title: opts.title ?? `Degree tail, N = ${doc.N}, α = ${doc.alpha}`,
    subtitle: `mean degree ${fmtTick(doc.mean_degree)}`,
    width: opts.width,
    height: opts.height,
    x: { label: "degree k", min: 1, max: kMax, log: true },
    y: { label: "P(K ≥ k)", min: Math.min(pMin, 0.1), max: 1, log: true },
  });

  let body = "";
  const path = points
    .map((p, i) => `${i ? "L" : "M"}${frame.xOf(p.k).toFixed(2)},${frame.yOf(p.p).toFixed(2)}`)
    .join(" ");
  body += `<path d="${path}" fill="none" stroke="${PALETTE[0]}" stroke-width="1.4" data-series="ccdf" data-points="${points.length}"/>\n`;

  // Guide lines are anchored where the tail begins (top 1% of mass) and span
  // one decade in k.  A density exponent g shows up here with slope -(g - 1).
  const anchor = points.find((p) => p.p <= 0.01) ?? points[Math.floor(points.length / 2)]!;
  const kEnd = Math.min(anchor.k * 10, kMax);
  const entries: LegendEntry[] = [{ color: PALETTE[0]!, label: "measured CCDF" }];

  const drawGuide = (slope: number, color: string, label: string, name: string): void => {
    const pEnd = anchor.p * Math.pow(kEnd / anchor.k, slope);
    body +=
      `<line x1="${frame.xOf(anchor.k).toFixed(2)}" y1="${frame.yOf(anchor.p).toFixed(2)}"` +
      ` x2="${frame.xOf(kEnd).toFixed(2)}" y2="${frame.yOf(Math.max(pEnd, 1e-12)).toFixed(2)}"` +
      ` stroke="${color}" stroke-width="1.2" stroke-dasharray="5,3" data-guide="${name}" data-slope="${slope}"/>\n`;
    entries.push({ color, label, dash: "5,3" });
  };

  if (doc.hill_exponent !== null) {
    drawGuide(-(doc.hill_exponent - 1), PALETTE[1]!, `fitted tail (exponent ${fmtTick(doc.hill_exponent)})`, "fitted");
  }
  drawGuide(-2 * doc.alpha, PALETTE[2]!, `exponent 2α+1 = ${fmtTick(2 * doc.alpha + 1)}`, "reference");

  body += legend(entries, frame.x0 + 8, frame.y1 - entries.length * 13 - 12);
  return frame.head + body + frame.foot;
}

// ---------------------------------------------------------------------------
// bands: census counts per degree band against their certified bounds
// ---------------------------------------------------------------------------

export function buildBandsFigure(doc: BandsDoc, opts: FigureOptions = {}): string {
  const rows = doc.census;
  const positives = rows
    .flatMap((r) => [r.count, r.lo, r.hi ?? 0])
    .concat(doc.census_remainder)
    .filter((v) => v > 0);
  const yMax = Math.max(...positives, 1) * 2;
  const yMin = positives.length > 0 ? Math.max(Math.min(...positives) / 2, 0.5) : 0.5;

  const frame = chartFrame({
    title: opts.title ?? `Degree-band census, N = ${doc.N}, ε = ${doc.epsilon}`,
    subtitle: `C = ${doc.C}, T = ${doc.T}; shaded range = certified bounds`,
    width: opts.width,
    height: opts.height,
    x: {
      label: "band index (R = remainder below all bands)",
      min: -0.5,
      max: rows.length + 0.5,
      ticks: [...rows.map((r) => r.band), rows.length],
      fmt: (v) => (v === rows.length ? "R" : String(v)),
    },
    y: { label: "vertex count", min: yMin, max: yMax, log: true },
  });

  let body = "";
  const barW = Math.min(40, (frame.x1 - frame.x0) / (rows.length + 1) * 0.55);

  for (const r of rows) {
    const cx = frame.xOf(r.band);
    const color = r.in_bounds ? PALETTE[0]! : PALETTE[1]!;
    if (r.count > 0) {
      const top = frame.yOf(r.count);
      body +=
        `<rect x="${(cx - barW / 2).toFixed(2)}" y="${top.toFixed(2)}" width="${barW.toFixed(2)}"` +
        ` height="${(frame.y1 - top).toFixed(2)}" fill="${color}" fill-opacity="0.75"` +
        ` data-bar="band" data-band="${r.band}" data-count="${r.count}" data-in-bounds="${r.in_bounds}"/>\n`;
    }
    // Certified range: lower bound always present, upper bound may be open
    // (null), which is drawn as extending to the top of the plot.
    const yLo = frame.yOf(Math.max(r.lo, yMin));
    const yHi = r.hi === null ? frame.y0 : frame.yOf(Math.min(r.hi, yMax));
    body +=
      `<line x1="${cx.toFixed(2)}" y1="${yLo.toFixed(2)}" x2="${cx.toFixed(2)}" y2="${yHi.toFixed(2)}"` +
      ` stroke="#222" stroke-width="1.2" data-bounds="band-${r.band}" data-lo="${r.lo}" data-hi="${r.hi ?? "open"}"/>\n`;
    body += `<line x1="${(cx - 6).toFixed(2)}" y1="${yLo.toFixed(2)}" x2="${(cx + 6).toFixed(2)}" y2="${yLo.toFixed(2)}" stroke="#222" stroke-width="1.2"/>\n`;
    if (r.hi !== null) {
      body += `<line x1="${(cx - 6).toFixed(2)}" y1="${yHi.toFixed(2)}" x2="${(cx + 6).toFixed(2)}" y2="${yHi.toFixed(2)}" stroke="#222" stroke-width="1.2"/>\n`;
    }
  }

  if (doc.census_remainder > 0) {
    const cx = frame.xOf(rows.length);
    const top = frame.yOf(doc.census_remainder);
    body +=
      `<rect x="${(cx - barW / 2).toFixed(2)}" y="${top.toFixed(2)}" width="${barW.toFixed(2)}"` +
      ` height="${(frame.y1 - top).toFixed(2)}" fill="#999" fill-opacity="0.6"` +
      ` data-bar="remainder" data-count="${doc.census_remainder}"/>\n`;
  }

  body += legend(
    [
      { color: PALETTE[0]!, label: "count within bounds" },
      { color: PALETTE[1]!, label: "count out of bounds" },
      { color: "#999", label: "remainder (below bands)" },
    ],
    frame.x0 + 8,
    frame.y0 + 6,
  );
  return frame.head + body + frame.foot;
}

// ---------------------------------------------------------------------------
// theta: angular reach per band with its geometric floor
// ---------------------------------------------------------------------------

export function buildThetaFigure(doc: BandsDoc, opts: FigureOptions = {}): string {
  const theta = doc.Theta_i;
  if (theta.length === 0) throw new InputError("Theta_i is empty");
  const floor = Math.PI / 2;

  const frame = chartFrame({
    title: opts.title ?? `Angular reach per band, N = ${doc.N}, ε = ${doc.epsilon}`,
    width: opts.width,
    height: opts.height,
    x: {
      label: "band index i",
      min: -0.5,
      max: theta.length - 0.5,
      ticks: theta.map((_, i) => i),
      fmt: (v) => String(v),
    },
    y: { label: "Θ_i (radians)", min: 0, max: Math.max(...theta, floor) * 1.15 },
  });

  let body = "";
  const yFloor = frame.yOf(floor);
  body +=
    `<line x1="${frame.x0}" y1="${yFloor.toFixed(2)}" x2="${frame.x1}" y2="${yFloor.toFixed(2)}"` +
    ` stroke="${PALETTE[1]}" stroke-width="1.2" stroke-dasharray="5,3" data-guide="floor" data-value="${floor}"/>\n`;
  body += `<text x="${frame.x1 - 4}" y="${(yFloor - 5).toFixed(2)}" text-anchor="end" font-size="8.5" fill="${PALETTE[1]}">π/2 floor</text>\n`;

  const line = theta
    .map((t, i) => `${i ? "L" : "M"}${frame.xOf(i).toFixed(2)},${frame.yOf(t).toFixed(2)}`)
    .join(" ");
  if (theta.length > 1) {
    body += `<path d="${line}" fill="none" stroke="${PALETTE[0]}" stroke-width="1.6" data-series="theta"/>\n`;
  }
  theta.forEach((t, i) => {
    body +=
      `<circle cx="${frame.xOf(i).toFixed(2)}" cy="${frame.yOf(t).toFixed(2)}" r="3" fill="${PALETTE[0]}"` +
      ` data-point="theta" data-band="${i}" data-value="${t}"/>\n`;
  });

  body += legend(
    [
      { color: PALETTE[0]!, label: "Θ_i" },
      { color: PALETTE[1]!, label: "π/2 floor", dash: "5,3" },
    ],
    frame.x1 - 120,
    frame.y0 + 6,
  );
  return frame.head + body + frame.foot;
}

export { esc };
