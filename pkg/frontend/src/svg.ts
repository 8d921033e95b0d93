/**
 * Hand-rolled SVG chart scaffolding: scales, ticks, axes, legends.
 * Everything is assembled as text; rendering is a pure function of its
 * inputs (no dates, no randomness), so identical inputs give identical
 * bytes.
 */

export const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#9d4edd", "#f77f00"];

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Tick label: plain notation where compact, exponent notation elsewhere. */
export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.001 && a < 10000) {
    return String(parseFloat(v.toPrecision(4)));
  }
  const exp = Math.floor(Math.log10(a));
  const mant = v / Math.pow(10, exp);
  const m = parseFloat(mant.toPrecision(3));
  return m === 1 ? `1e${exp}` : m === -1 ? `-1e${exp}` : `${m}e${exp}`;
}

export function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 0.01; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Powers of ten inside [min, max]; falls back to endpoints when none fit. */
export function logTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); Math.pow(10, e) <= max * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [min, max];
}

export interface AxisOpts {
  label: string;
  min: number;
  max: number;
  log?: boolean;
  /** explicit tick positions (e.g. integer levels); otherwise computed */
  ticks?: number[];
  fmt?: (v: number) => string;
}

export interface FrameOpts {
  title: string;
  subtitle?: string;
  width?: number;
  height?: number;
  x: AxisOpts;
  y: AxisOpts;
}

export interface Frame {
  /** opening markup: svg element, title, grid, axes, tick labels */
  head: string;
  foot: string;
  xOf: (v: number) => number;
  yOf: (v: number) => number;
  /** plot area corners */
  x0: number;
  y0: number;
  x1: number;
  y1: number;
  width: number;
  height: number;
}

/** Pad a degenerate [v, v] range so scales and ticks stay finite. */
function padRange(min: number, max: number, log: boolean): [number, number] {
  if (min < max) return [min, max];
  if (log) return [min / 10, max * 10];
  const pad = Math.abs(min) > 0 ? Math.abs(min) * 0.5 : 1;
  return [min - pad, max + pad];
}

export function chartFrame(opts: FrameOpts): Frame {
  const W = opts.width ?? 640;
  const H = opts.height ?? 360;
  const ml = 62, mr = 20, mt = opts.subtitle ? 44 : 34, mb = 46;
  const pw = W - ml - mr;
  const ph = H - mt - mb;

  const [xMin, xMax] = padRange(opts.x.min, opts.x.max, opts.x.log ?? false);
  const [yMin, yMax] = padRange(opts.y.min, opts.y.max, opts.y.log ?? false);
  if (opts.x.log && xMin <= 0) throw new Error("log x axis needs positive range");
  if (opts.y.log && yMin <= 0) throw new Error("log y axis needs positive range");

  const xOf = opts.x.log
    ? (v: number) => ml + ((Math.log10(v) - Math.log10(xMin)) / (Math.log10(xMax) - Math.log10(xMin))) * pw
    : (v: number) => ml + ((v - xMin) / (xMax - xMin)) * pw;
  const yOf = opts.y.log
    ? (v: number) => mt + ph - ((Math.log10(v) - Math.log10(yMin)) / (Math.log10(yMax) - Math.log10(yMin))) * ph
    : (v: number) => mt + ph - ((v - yMin) / (yMax - yMin)) * ph;

  const xTicks = opts.x.ticks ?? (opts.x.log ? logTicks(xMin, xMax) : niceTicks(xMin, xMax, 6));
  const yTicks = opts.y.ticks ?? (opts.y.log ? logTicks(yMin, yMax) : niceTicks(yMin, yMax, 5));
  const xFmt = opts.x.fmt ?? fmtTick;
  const yFmt = opts.y.fmt ?? fmtTick;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  s += `<text x="${ml}" y="16" font-size="12" font-weight="600" fill="#222">${esc(opts.title)}</text>\n`;
  if (opts.subtitle) {
    s += `<text x="${ml}" y="30" font-size="9" fill="#888">${esc(opts.subtitle)}</text>\n`;
  }

  for (const v of yTicks) {
    const y = yOf(v).toFixed(2);
    s += `<line x1="${ml}" y1="${y}" x2="${ml + pw}" y2="${y}" stroke="#eee" stroke-width="0.6"/>\n`;
  }

  s += `<line x1="${ml}" y1="${mt}" x2="${ml}" y2="${mt + ph}" stroke="#333" stroke-width="0.8"/>\n`;
  s += `<line x1="${ml}" y1="${mt + ph}" x2="${ml + pw}" y2="${mt + ph}" stroke="#333" stroke-width="0.8"/>\n`;

  for (const v of xTicks) {
    const x = xOf(v).toFixed(2);
    s += `<line x1="${x}" y1="${mt + ph}" x2="${x}" y2="${mt + ph + 4}" stroke="#333" stroke-width="0.6"/>\n`;
    s += `<text x="${x}" y="${mt + ph + 15}" text-anchor="middle" font-size="8.5" fill="#555">${esc(xFmt(v))}</text>\n`;
  }
  for (const v of yTicks) {
    const y = yOf(v);
    s += `<line x1="${ml - 4}" y1="${y.toFixed(2)}" x2="${ml}" y2="${y.toFixed(2)}" stroke="#333" stroke-width="0.6"/>\n`;
    s += `<text x="${ml - 7}" y="${(y + 3).toFixed(2)}" text-anchor="end" font-size="8.5" fill="#555">${esc(yFmt(v))}</text>\n`;
  }

  s += `<text x="${ml + pw / 2}" y="${H - 8}" text-anchor="middle" font-size="10" fill="#333">${esc(opts.x.label)}</text>\n`;
  s += `<text x="16" y="${mt + ph / 2}" text-anchor="middle" font-size="10" fill="#333" transform="rotate(-90,16,${mt + ph / 2})">${esc(opts.y.label)}</text>\n`;

  return {
    head: s,
    foot: "</svg>\n",
    xOf,
    yOf,
    x0: ml,
    y0: mt,
    x1: ml + pw,
    y1: mt + ph,
    width: W,
    height: H,
  };
}

export interface LegendEntry {
  color: string;
  label: string;
  dash?: string;
}

export function legend(entries: LegendEntry[], x: number, y: number): string {
  if (entries.length === 0) return "";
  const w = Math.max(...entries.map((e) => e.label.length)) * 5.2 + 30;
  const h = entries.length * 13 + 6;
  let s = `<rect x="${x}" y="${y}" width="${w}" height="${h}" rx="3" fill="#fff" fill-opacity="0.9" stroke="#ddd" stroke-width="0.5"/>\n`;
  entries.forEach((e, i) => {
    const ly = y + 11 + i * 13;
    const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
    s += `<line x1="${x + 6}" y1="${ly}" x2="${x + 22}" y2="${ly}" stroke="${e.color}" stroke-width="1.5"${dash}/>\n`;
    s += `<text x="${x + 26}" y="${ly + 3}" font-size="8.5" fill="#444">${esc(e.label)}</text>\n`;
  });
  return s;
}
