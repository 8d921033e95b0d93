"""Bootstrap percolation and r-core decomposition.

The spreading rule: start from an infected seed set, then repeatedly (in
synchronous rounds) infect every vertex with at least ``r`` infected
neighbors; infection never recovers.  ``bootstrap`` uses the incremental
frontier kernel; ``naive_bootstrap`` recomputes every round from scratch and
exists purely as an independent oracle for tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError
from .graph import Graph, bond_percolate, connected_components
from .rng import INFECT_STREAM, keyed_unit


@dataclass(frozen=True)
class PercolationConfig:
    """One experiment cell: edge retention, seeding density, threshold."""

    rho: float
    p: float
    r: int
    seed: int

    def __post_init__(self):
        if not 0.0 < self.rho <= 1.0:
            raise ParameterError(f"rho must lie in (0, 1], got {self.rho!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p must lie in [0, 1], got {self.p!r}")
        if not (isinstance(self.r, (int, np.integer)) and self.r >= 1):
            raise ParameterError(f"r must be a positive integer, got {self.r!r}")
        if not (0 <= int(self.seed) < 2**64):
            raise ParameterError("seed must fit in 64 bits")


@dataclass
class BootstrapResult:
    infected: np.ndarray  # bool mask over vertices
    round_of: np.ndarray  # -1 never, 0 seed, k >= 1 infected in round k
    per_round: np.ndarray  # newly infected per round, starting at round 1

    @property
    def a0_size(self) -> int:
        return int((self.round_of == 0).sum())

    @property
    def af_size(self) -> int:
        return int(self.infected.sum())

    @property
    def rounds(self) -> int:
        return len(self.per_round)


@dataclass
class CoreResult:
    mask: np.ndarray
    size: int


def initial_infection(g: Graph, p: float, seed: int) -> np.ndarray:
    """Independently infect each vertex with probability p (keyed by id)."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p!r}")
    return keyed_unit(seed, INFECT_STREAM, np.arange(g.n, dtype=np.uint64)) < p


def bootstrap(g: Graph, initial: np.ndarray, r: int) -> BootstrapResult:
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r!r}")
    initial = np.asarray(initial, dtype=bool)
    if initial.shape != (g.n,):
        raise ParameterError("initial infection mask must have one entry per vertex")
    infected, round_of, per_round = kernels.bootstrap_spread(
        g.indptr, g.indices, initial, r
    )
    return BootstrapResult(infected, round_of, per_round)


def naive_bootstrap(g: Graph, initial: np.ndarray, r: int) -> BootstrapResult:
    """Full-rescan reference implementation (small graphs only)."""
    if g.n > 5000:
        raise ParameterError("naive_bootstrap is for graphs with N <= 5000")
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r!r}")
    infected = np.asarray(initial, dtype=bool).copy()
    round_of = np.where(infected, 0, -1).astype(np.int64)
    per_round = []
    e0, e1 = (g.edges[:, 0], g.edges[:, 1]) if len(g.edges) else (
        np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))
    rnd = 0
    while True:
        cnt = (np.bincount(e0[infected[e1]], minlength=g.n)
               + np.bincount(e1[infected[e0]], minlength=g.n))
        newly = np.flatnonzero((cnt >= r) & ~infected)
        if len(newly) == 0:
            return BootstrapResult(infected, round_of, np.asarray(per_round, dtype=np.int64))
        rnd += 1
        infected[newly] = True
        round_of[newly] = rnd
        per_round.append(len(newly))


def check_fixed_point(g: Graph, result: BootstrapResult, r: int) -> bool:
    """True iff the final set is internally supported and cannot grow.

    Every infected non-seed vertex must have >= r infected neighbors, and
    every uninfected vertex must have < r of them.
    """
    infected = result.infected
    cnt = np.zeros(g.n, dtype=np.int64)
    if len(g.edges):
        e0, e1 = g.edges[:, 0], g.edges[:, 1]
        cnt = (np.bincount(e0[infected[e1]], minlength=g.n)
               + np.bincount(e1[infected[e0]], minlength=g.n))
    non_seed = infected & (result.round_of > 0)
    supported = bool(np.all(cnt[non_seed] >= r))
    closed = bool(np.all(cnt[~infected] < r))
    return supported and closed


def r_core(g: Graph, r: int) -> CoreResult:
    """Maximal induced subgraph with minimum degree >= r (empty allowed)."""
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r!r}")
    mask = kernels.peel_to_core(g.indptr, g.indices, r)
    return CoreResult(mask=mask, size=int(mask.sum()))


def run_experiment(g: Graph, cfg: PercolationConfig) -> dict:
    """percolate -> seed -> spread -> components/core summary of one run."""
    gp = bond_percolate(g, cfg.rho, cfg.seed)
    a0 = initial_infection(gp, cfg.p, cfg.seed)
    res = bootstrap(gp, a0, cfg.r)
    _, sizes = connected_components(gp)
    core = r_core(gp, cfg.r)
    return {
        "seed": cfg.seed,
        "p": cfg.p,
        "rho": cfg.rho,
        "r": cfg.r,
        "N": g.n,
        "alpha": g.params.alpha,
        "nu": g.params.nu,
        "a0_size": res.a0_size,
        "af_size": res.af_size,
        "rounds": res.rounds,
        "core_size": core.size,
        "l1": int(sizes.max()),
    }
