"""Command-line front end: generate, run, sweep, stats, bands.

Every subcommand accepts ``--config FILE`` (a flat JSON object keyed by
option name); explicit flags override config values, which override the
built-in defaults.  The fully resolved configuration is embedded in JSON
outputs under "config" and written next to sweep CSVs as a sidecar, so any
artifact can be reproduced from itself.

Exit codes: 0 success, 2 usage error, 3 file/I-O error, 4 numeric or
decomposition failure.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from time import perf_counter

from . import bands as band_analysis
from . import stats as graph_stats
from .errors import DecompositionError, GraphFileError, ParameterError
from .geometry import ModelParams
from .graph import bond_percolate, build_graph, load_graph, save_graph
from .percolation import PercolationConfig, run_experiment
from .rng import SWEEP_STREAM, derive_seed

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

SWEEP_COLUMNS = [
    "N", "alpha", "nu", "rho", "r", "p", "p_multiplier", "seed",
    "a0_size", "af_size", "af_fraction", "rounds",
    "l1_fraction", "core_fraction", "wall_time_ms",
]


def _typed(name, convert, check, describe):
    def parse(text):
        try:
            value = convert(text)
        except (TypeError, ValueError):
            raise argparse.ArgumentTypeError(f"{name}: expected {describe}, got {text!r}")
        if not check(value):
            raise argparse.ArgumentTypeError(f"{name}: expected {describe}, got {text!r}")
        return value

    return parse


_positive_int = _typed("int", int, lambda v: v >= 1, "a positive integer")
_nonneg_float = _typed("float", float, lambda v: v >= 0 and math.isfinite(v), "a number >= 0")
_positive_float = _typed("float", float, lambda v: v > 0 and math.isfinite(v), "a number > 0")
_probability = _typed("float", float, lambda v: 0.0 <= v <= 1.0, "a number in [0, 1]")
_rho_type = _typed("float", float, lambda v: 0.0 < v <= 1.0, "a number in (0, 1]")
_open_unit = _typed("float", float, lambda v: 0.0 < v < 1.0, "a number in (0, 1)")
_seed_type = _typed("int", int, lambda v: 0 <= v < 2**64, "a 64-bit seed")


def _big_c_type(text):
    if str(text).lower() == "auto":
        return "auto"
    return _positive_float(text)


def _list_of(item_type):
    def parse(text):
        parts = [p for p in str(text).split(",") if p != ""]
        if not parts:
            raise argparse.ArgumentTypeError("expected a comma-separated list")
        return [item_type(p) for p in parts]

    return parse


@dataclass(frozen=True)
class _Opt:
    dest: str
    convert: object
    default: object = None
    required: bool = False
    help: str = ""
    choices: tuple = ()


def _command_options():
    n = _Opt("n", _positive_int, required=True, help="number of vertices")
    alpha = _Opt("alpha", _positive_float, required=True, help="radial density exponent")
    nu = _Opt("nu", _positive_float, default=1.0, help="density scale (R = 2 ln(N/nu))")
    seed = _Opt("seed", _seed_type, default=0, help="master seed")
    graph = _Opt("graph", str, required=True, help="graph file from 'generate'")
    out = _Opt("out", str, help="output path (default: stdout)")
    rho = _Opt("rho", _rho_type, default=1.0, help="edge retention probability")
    r = _Opt("r", _positive_int, default=2, help="activation threshold")
    epsilon = _Opt("epsilon", _open_unit, default=0.1, help="band slack parameter")
    big_c = _Opt("big_c", _big_c_type, default="auto",
                 help="type floor C, or 'auto' to derive it")
    c_block = _Opt("c_block", _positive_float, default=1.0,
                   help="block coverage rate constant")
    delta = _Opt("delta", _open_unit, default=0.1, help="infection floor slack")
    return {
        "generate": [
            n, alpha, nu, seed,
            _Opt("mode", str, default="windowed", choices=("windowed", "exact_bruteforce"),
                 help="neighbor search strategy"),
            _Opt("out", str, required=True, help="graph file to write"),
        ],
        "run": [
            graph,
            _Opt("p", _probability, help="initial infection probability"),
            _Opt("p_mult", _nonneg_float,
                 help="multiplier m giving p = m * N^(-1/(2 alpha))"),
            rho, r,
            _Opt("seed", _seed_type, help="run seed (default: the graph's seed)"),
            out,
        ],
        "sweep": [
            _Opt("n", _list_of(_positive_int), required=True, help="vertex counts"),
            _Opt("alpha", _list_of(_positive_float), required=True, help="alpha values"),
            nu,
            _Opt("rho", _list_of(_rho_type), default=[1.0], help="retention values"),
            _Opt("r", _list_of(_positive_int), default=[2], help="thresholds"),
            _Opt("p_mult", _list_of(_nonneg_float), required=True,
                 help="multipliers m, p = m * N^(-1/(2 alpha))"),
            _Opt("seeds", _positive_int, default=10, help="seeds per cell"),
            seed,
            _Opt("workers", _positive_int, help="process count "
                 "(default: HRGBOOT_WORKERS or the machine's cores, capped at 4)"),
            _Opt("out", str, required=True, help="CSV file to write"),
            _Opt("format", str, default="csv", choices=("csv", "json"),
                 help="row encoding"),
        ],
        "stats": [
            graph, epsilon, big_c,
            _Opt("rho", _rho_type, default=1.0, help="retention used for the C floor"),
            _Opt("r", _positive_int, default=1, help="threshold used for the C floor"),
            c_block, out,
        ],
        "bands": [
            graph, epsilon, big_c, rho,
            _Opt("r", _positive_int, default=1, help="activation threshold"),
            c_block, delta,
            _Opt("seed", _seed_type, help="percolation seed (default: the graph's seed)"),
            out,
        ],
    }


_OPTIONS = _command_options()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrgboot",
        description="Bootstrap percolation experiments on random hyperbolic graphs.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)
    summaries = {
        "generate": "sample a graph and save it",
        "run": "one percolate/infect/spread experiment on a saved graph",
        "sweep": "phase-transition sweep over a parameter grid",
        "stats": "degree, clustering and component summary of a saved graph",
        "bands": "band decomposition, census and block diagnostics",
    }
    for cmd, opts in _OPTIONS.items():
        p = sub.add_parser(cmd, help=summaries[cmd])
        p.add_argument("--config", help="JSON file with defaults for any option")
        for opt in opts:
            flag = "--" + opt.dest.replace("_", "-")
            kwargs = {"dest": opt.dest, "default": None, "help": opt.help}
            if opt.choices:
                kwargs["choices"] = opt.choices
            else:
                kwargs["type"] = opt.convert
            p.add_argument(flag, **kwargs)
    return parser


def _coerce_config_value(opt: _Opt, raw, error):
    if opt.choices:
        if raw not in opt.choices:
            error(f"config {opt.dest}: expected one of {opt.choices}, got {raw!r}")
        return raw
    if isinstance(raw, list):
        raw = ",".join(str(x) for x in raw)
    try:
        return opt.convert(str(raw))
    except argparse.ArgumentTypeError as exc:
        error(f"config {opt.dest}: {exc}")


def _resolve(args, parser) -> dict:
    """Merge flags > config file > defaults; returns the resolved mapping."""
    config = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except OSError as exc:
            parser.error(f"--config {args.config}: {exc}")
        except json.JSONDecodeError as exc:
            parser.error(f"--config {args.config}: invalid JSON: {exc}")
        if not isinstance(config, dict):
            parser.error(f"--config {args.config}: expected a JSON object")
    known = {o.dest for o in _OPTIONS[args.cmd]}
    for key in config:
        if key not in known:
            parser.error(f"config {args.config}: unknown option {key!r} for '{args.cmd}'")
    resolved = {}
    for opt in _OPTIONS[args.cmd]:
        value = getattr(args, opt.dest)
        if value is None and opt.dest in config:
            value = _coerce_config_value(opt, config[opt.dest], parser.error)
        if value is None:
            value = opt.default
        if value is None and opt.required:
            parser.error(f"the following argument is required: --{opt.dest.replace('_', '-')}")
        setattr(args, opt.dest, value)
        resolved[opt.dest] = value
    return resolved


def _jsonsafe(obj):
    """Replace non-finite floats with None so output parses everywhere."""
    if isinstance(obj, dict):
        return {k: _jsonsafe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonsafe(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _emit_json(doc: dict, out) -> None:
    text = json.dumps(_jsonsafe(doc), indent=2, sort_keys=True, allow_nan=False)
    if out is None or out == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _multiplier_p(m: float, N: int, alpha: float) -> float:
    return min(1.0, m * N ** (-1.0 / (2.0 * alpha)))


def cmd_generate(args, resolved) -> int:
    params = ModelParams(N=args.n, alpha=args.alpha, nu=args.nu, seed=args.seed)
    g = build_graph(params, mode=args.mode)
    save_graph(g, args.out)
    deg = g.degree_sequence()
    print(
        f"wrote {args.out}: N={g.n} edges={g.edge_count} "
        f"mean_degree={g.mean_degree():.4f} "
        f"max_degree={int(deg.max()) if deg.size else 0}"
    )
    return EXIT_OK


def cmd_run(args, resolved) -> int:
    g = load_graph(args.graph)
    seed = g.params.seed if args.seed is None else args.seed
    p = args.p if args.p is not None else _multiplier_p(args.p_mult, g.n, g.params.alpha)
    record = run_experiment(g, PercolationConfig(rho=args.rho, p=p, r=args.r, seed=seed))
    record["config"] = {**resolved, "seed": seed, "p": p}
    _emit_json(record, args.out)
    return EXIT_OK


def _sweep_tasks(args):
    cells = list(itertools.product(args.n, args.alpha, args.rho, args.r, args.p_mult))
    tasks = []
    for cell_idx, (N, alpha, rho, r, m) in enumerate(cells):
        for seed_idx in range(args.seeds):
            seed = derive_seed(args.seed, SWEEP_STREAM, cell_idx, seed_idx)
            tasks.append((N, alpha, args.nu, rho, r, m, seed))
    return tasks


def _sweep_cell(task) -> dict:
    N, alpha, nu, rho, r, m, seed = task
    start = perf_counter()
    try:
        g = build_graph(ModelParams(N=N, alpha=alpha, nu=nu, seed=seed))
        rec = run_experiment(g, PercolationConfig(
            rho=rho, p=_multiplier_p(m, N, alpha), r=r, seed=seed))
    except Exception as exc:  # keep the sweep alive; report the cell
        return {"error": f"{type(exc).__name__}: {exc}",
                "N": N, "alpha": alpha, "rho": rho, "r": r,
                "p_multiplier": m, "seed": seed}
    return {
        "N": N, "alpha": alpha, "nu": nu, "rho": rho, "r": r,
        "p": rec["p"], "p_multiplier": m, "seed": seed,
        "a0_size": rec["a0_size"], "af_size": rec["af_size"],
        "af_fraction": rec["af_size"] / N, "rounds": rec["rounds"],
        "l1_fraction": rec["l1"] / N, "core_fraction": rec["core_size"] / N,
        "wall_time_ms": (perf_counter() - start) * 1e3,
    }


def _default_workers() -> int:
    env = os.environ.get("HRGBOOT_WORKERS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise ParameterError(f"HRGBOOT_WORKERS={env!r} is not an integer")
    return min(4, os.cpu_count() or 1)


def cmd_sweep(args, resolved) -> int:
    workers = args.workers if args.workers is not None else _default_workers()
    resolved = {**resolved, "workers": workers}
    tasks = _sweep_tasks(args)
    total = len(tasks)
    failures = 0

    with open(args.out + ".config.json", "w", encoding="utf-8") as fh:
        json.dump(resolved, fh, indent=2, sort_keys=True)
        fh.write("\n")

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        if args.format == "csv":
            writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS)
            writer.writeheader()
        fh.flush()
        if workers > 1:
            pool = ProcessPoolExecutor(max_workers=workers)
            rows = pool.map(_sweep_cell, tasks, chunksize=1)
        else:
            pool = None
            rows = map(_sweep_cell, tasks)
        try:
            for done, row in enumerate(rows, start=1):
                if "error" in row:
                    failures += 1
                    print(f"[{done}/{total}] FAILED {row}", file=sys.stderr)
                    continue
                if args.format == "csv":
                    writer.writerow(row)
                else:
                    fh.write(json.dumps(row, sort_keys=True) + "\n")
                fh.flush()
                print(
                    f"[{done}/{total}] N={row['N']} alpha={row['alpha']} "
                    f"rho={row['rho']} r={row['r']} m={row['p_multiplier']} "
                    f"seed={row['seed']} af={row['af_fraction']:.4g} "
                    f"({row['wall_time_ms']:.0f} ms)",
                    file=sys.stderr,
                )
        finally:
            if pool is not None:
                pool.shutdown()
    if failures:
        print(f"{failures}/{total} cells failed", file=sys.stderr)
        return EXIT_NUMERIC if failures == total else EXIT_OK
    return EXIT_OK


def cmd_stats(args, resolved) -> int:
    g = load_graph(args.graph)
    doc = graph_stats.graph_summary(g)
    doc["band_census"] = None
    doc["band_census_error"] = None
    try:
        C = args.big_c
        if C == "auto":
            C = band_analysis.compute_C(
                g.params.alpha, g.params.nu, args.epsilon, args.rho, args.r,
                c_block=args.c_block)
        bd = band_analysis.solve_band_recurrence(g.params, args.epsilon, C)
        census = band_analysis.band_census(g, bd)
        doc["band_census"] = {
            "C": bd.C, "T": bd.T, "t": [float(x) for x in bd.t],
            **census.as_dict(),
            "in_bounds": [bool(b) for b in census.in_bounds()],
        }
    except (DecompositionError, ParameterError) as exc:
        doc["band_census_error"] = str(exc)
    doc["config"] = resolved
    _emit_json(doc, args.out)
    return EXIT_OK


def cmd_bands(args, resolved) -> int:
    g = load_graph(args.graph)
    seed = g.params.seed if args.seed is None else args.seed
    C = args.big_c
    if C == "auto":
        C = band_analysis.compute_C(
            g.params.alpha, g.params.nu, args.epsilon, args.rho, args.r,
            c_block=args.c_block)
    bd = band_analysis.solve_band_recurrence(g.params, args.epsilon, C)
    gp = bond_percolate(g, args.rho, seed)
    diag = band_analysis.black_block_diagnostics(
        g, gp, bd, args.r, rho=args.rho, delta=args.delta, c_block=args.c_block)
    census = band_analysis.band_census(g, bd)
    report = band_analysis.error_term_report(bd, args.rho, args.r, c_block=args.c_block)
    report_dict = report.as_dict()
    in_bounds = census.in_bounds()
    census_rows = []
    for i in range(len(census.counts)):
        census_rows.append({
            "band": i,
            "count": int(census.counts[i]),
            "lo": float(census.bounds_lo[i]),
            "hi": None if math.isinf(census.bounds_hi[i]) else float(census.bounds_hi[i]),
            "in_bounds": bool(in_bounds[i]),
            "qualified": int(diag.N_prime[i]) if i < len(diag.N_prime) else None,
        })
    doc = {
        **bd.as_dict(),
        "census": census_rows,
        "census_remainder": census.remainder,
        "S_i": [int(x) for x in diag.S[1:]],
        "Theta_i": [float(x) for x in diag.Theta[1:]],
        "L_i": [None if math.isnan(x) else float(x) for x in diag.L[1:]],
        "blocks_total": [int(x) for x in diag.blocks_total[1:]],
        "kappa": diag.kappa,
        "qualified_total": diag.qualified_total,
        "error_sums": report_dict["sums"],
        "flags": {
            **report_dict["flags"],
            "census_in_bounds": bool(in_bounds[1:].all()) if len(in_bounds) > 1 else True,
        },
        "config": {**resolved, "seed": seed, "big_c": C},
    }
    _emit_json(doc, args.out)
    return EXIT_OK


_HANDLERS = {
    "generate": cmd_generate,
    "run": cmd_run,
    "sweep": cmd_sweep,
    "stats": cmd_stats,
    "bands": cmd_bands,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    resolved = _resolve(args, parser)
    if args.cmd == "run" and (args.p is None) == (args.p_mult is None):
        parser.error("exactly one of --p / --p-mult is required")
    try:
        return _HANDLERS[args.cmd](args, resolved)
    except GraphFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DecompositionError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
