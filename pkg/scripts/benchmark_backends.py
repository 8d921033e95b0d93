"""Time the compiled kernels against the pure-numpy fallback.

The kernel backend is fixed at import time, so each side runs in its own
subprocess (the fallback is forced with HRGBOOT_PURE_PYTHON=1).  Phases:
windowed adjacency build, bond percolation + bootstrap spread, r-core
peeling, local clustering.  Results must agree exactly between backends;
the script checks edge counts and infection sizes before reporting.

Usage: python scripts/benchmark_backends.py [--n 50000] [--seeds 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
from time import perf_counter


def run_phases(n: int, alpha: float, nu: float, seeds: int, rho: float,
               p: float, r: int) -> dict:
    import hrgboot
    from hrgboot import kernels

    timings = {"build": [], "spread": [], "core": [], "clustering": []}
    checks = []
    for seed in range(seeds):
        t0 = perf_counter()
        g = hrgboot.build_graph(hrgboot.ModelParams(N=n, alpha=alpha, nu=nu, seed=seed))
        timings["build"].append(perf_counter() - t0)

        t0 = perf_counter()
        gp = hrgboot.bond_percolate(g, rho, seed)
        a0 = hrgboot.initial_infection(gp, p, seed)
        res = hrgboot.bootstrap(gp, a0, r)
        timings["spread"].append(perf_counter() - t0)

        t0 = perf_counter()
        core = hrgboot.r_core(gp, r)
        timings["core"].append(perf_counter() - t0)

        t0 = perf_counter()
        cc = float(kernels.local_clustering(g.indptr, g.indices).mean())
        timings["clustering"].append(perf_counter() - t0)

        checks.append({"edges": g.edge_count, "kept": gp.edge_count,
                       "af": res.af_size, "core": core.size,
                       "clustering": round(cc, 12)})
    return {"backend": hrgboot.BACKEND, "timings": timings, "checks": checks}


def spawn(pure: bool, args) -> dict:
    env = dict(os.environ)
    env.pop("HRGBOOT_PURE_PYTHON", None)
    if pure:
        env["HRGBOOT_PURE_PYTHON"] = "1"
    cmd = [sys.executable, os.path.abspath(__file__), "--worker",
           "--n", str(args.n), "--alpha", str(args.alpha), "--nu", str(args.nu),
           "--seeds", str(args.seeds), "--rho", str(args.rho),
           "--p", str(args.p), "--r", str(args.r)]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=50_000)
    ap.add_argument("--alpha", type=float, default=0.7)
    ap.add_argument("--nu", type=float, default=1.0)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--rho", type=float, default=0.5)
    ap.add_argument("--p", type=float, default=0.01)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        doc = run_phases(args.n, args.alpha, args.nu, args.seeds,
                         args.rho, args.p, args.r)
        json.dump(doc, sys.stdout)
        return 0

    fast = spawn(pure=False, args=args)
    slow = spawn(pure=True, args=args)
    if fast["backend"] == slow["backend"]:
        print(f"warning: both subprocesses picked the {fast['backend']} backend; "
              "build the extension with pip install -e . first", file=sys.stderr)
    if fast["checks"] != slow["checks"]:
        print("BACKEND MISMATCH: results differ between implementations",
              file=sys.stderr)
        print(json.dumps({"fast": fast["checks"], "slow": slow["checks"]}, indent=2),
              file=sys.stderr)
        return 1

    print(f"N={args.n} alpha={args.alpha} nu={args.nu} seeds={args.seeds} "
          f"rho={args.rho} p={args.p} r={args.r}")
    print(f"results identical across backends "
          f"(edges={fast['checks'][0]['edges']}, af={fast['checks'][0]['af']})")
    print()
    header = f"{'phase':<12} {fast['backend']:>12} {slow['backend']:>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for phase, fvals in fast["timings"].items():
        fbest = min(fvals)
        sbest = min(slow["timings"][phase])
        ratio = sbest / fbest if fbest > 0 else float("inf")
        print(f"{phase:<12} {fbest:>11.4f}s {sbest:>11.4f}s {ratio:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
