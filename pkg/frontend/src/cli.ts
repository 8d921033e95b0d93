#!/usr/bin/env node
/**
 * Command-line figure renderer.
 *
 *   hrgboot-figures <kind> --input <file> --out <figure.svg> [--title ...]
 *
 * kind is one of: phase, ccdf (sweep CSV / stats JSON) and bands, theta
 * (band-census JSON).  The SVG document is assembled completely before the
 * output path is touched, so a rejected input never leaves a file behind.
 *
 * Exit codes: 0 success, 2 usage or input problem, 1 unexpected failure.
 */

import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { buildBandsFigure, buildCcdfFigure, buildPhaseFigure, buildThetaFigure } from "./figures.js";
import type { FigureOptions } from "./figures.js";
import { InputError, parseBandsJson, parseStatsJson, parseSweepCsv } from "./rows.js";

const USAGE = `usage: hrgboot-figures <phase|ccdf|bands|theta> --input FILE --out FILE.svg
                       [--title TEXT] [--width PX] [--height PX]

  phase   final infected fraction vs. multiplier, from a sweep CSV
  ccdf    degree tail on log-log axes, from a stats JSON document
  bands   census counts vs. certified bounds, from a bands JSON document
  theta   angular reach per band, from a bands JSON document`;

type Builder = (text: string, opts: FigureOptions) => string;

const BUILDERS: Record<string, Builder> = {
  phase: (text, opts) => buildPhaseFigure(parseSweepCsv(text), opts),
  ccdf: (text, opts) => buildCcdfFigure(parseStatsJson(text), opts),
  bands: (text, opts) => buildBandsFigure(parseBandsJson(text), opts),
  theta: (text, opts) => buildThetaFigure(parseBandsJson(text), opts),
};

class UsageError extends Error {}

function parseCli(argv: string[]): { kind: string; input: string; out: string; opts: FigureOptions } {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        input: { type: "string" },
        out: { type: "string" },
        title: { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    });
  } catch (err) {
    throw new UsageError((err as Error).message);
  }
  if (parsed.values.help) throw new UsageError("");
  const [kind, ...extra] = parsed.positionals;
  if (kind === undefined) throw new UsageError("missing figure kind");
  if (extra.length > 0) throw new UsageError(`unexpected arguments: ${extra.join(" ")}`);
  if (!(kind in BUILDERS)) throw new UsageError(`unknown figure kind: ${kind}`);
  if (parsed.values.input === undefined) throw new UsageError("--input is required");
  if (parsed.values.out === undefined) throw new UsageError("--out is required");

  const opts: FigureOptions = {};
  if (parsed.values.title !== undefined) opts.title = parsed.values.title;
  for (const dim of ["width", "height"] as const) {
    const raw = parsed.values[dim];
    if (raw !== undefined) {
      const v = Number(raw);
      if (!Number.isFinite(v) || v < 120) throw new UsageError(`--${dim} must be a number >= 120`);
      opts[dim] = v;
    }
  }
  return { kind, input: parsed.values.input, out: parsed.values.out, opts };
}

export async function main(argv: string[]): Promise<number> {
  let cli;
  try {
    cli = parseCli(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      if (err.message) console.error(`error: ${err.message}`);
      console.error(USAGE);
      return 2;
    }
    throw err;
  }

  try {
    let text: string;
    try {
      text = readFileSync(cli.input, "utf8");
    } catch (err) {
      console.error(`error: cannot read ${cli.input}: ${(err as NodeJS.ErrnoException).code ?? err}`);
      return 2;
    }
    const svg = BUILDERS[cli.kind]!(text, cli.opts);
    writeFileSync(cli.out, svg);
    console.log(`wrote ${cli.out}`);
    return 0;
  } catch (err) {
    if (err instanceof InputError) {
      console.error(`error: ${cli.input}: ${err.message}`);
      return 2;
    }
    console.error(`unexpected error: ${err instanceof Error ? (err.stack ?? err.message) : err}`);
    return 1;
  }
}

const isEntry =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;

if (isEntry) {
  main(process.argv.slice(2)).then(
    (code) => process.exit(code),
    (err) => {
      console.error(`unexpected error: ${err instanceof Error ? (err.stack ?? err.message) : err}`);
      process.exit(1);
    },
  );
}
