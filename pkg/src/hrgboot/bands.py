"""Band decomposition of the disk and block-coloring diagnostics.

Vertices split into horocyclic bands by type t = R - r.  A one-step
recurrence produces decreasing band boundaries t_0 > t_1 > ...; each
consecutive pair fixes an angular scale theta^(i) below which a band-(i-1)
vertex reaches every point of a band-i arc.  Tiling the circle with blocks
of angle B_i = theta^(i) / t_i and coloring a block black when enough
qualified vertices of the previous band cover it certifies, level by level,
an angular region whose vertices retain enough percolated edges to keep a
bootstrap infection alive.  This module makes that construction executable:
the recurrence solver, the admissible type floor C, per-band censuses with
their concentration bounds, the coloring itself on sampled graphs, and the
correction sums that the construction needs to stay small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._pykernels import _ragged_ranges
from .errors import DecompositionError, ParameterError
from .geometry import (
    TWO_PI,
    ModelParams,
    adjacency_angle_exact,
    cosh_distance,
)

DEFAULT_DELTA = 0.1
DEFAULT_C_BLOCK = 1.0
_C_GRID_FACTOR = 1.05
_C_MAX = 1.0e6
_RESIDUAL_TOL = 1.0e-12
# prefilter windows get the same widening slack the graph builder uses
_WINDOW_SLACK = 1e-9


def _log_gain(t, nu: float, epsilon: float):
    """The 2 ln(4 pi t / (nu (1 - eps)^4)) term of the band recurrence."""
    return 2.0 * np.log(4.0 * math.pi * t / (nu * (1.0 - epsilon) ** 4))


@dataclass
class BandDecomposition:
    """Band boundaries and per-level angular scales.

    Arrays are index-aligned with the level number: ``t[i]`` is boundary i
    (``t[0] = R/2``), and ``theta[i]``, ``B[i]``, ``K[i]`` hold the level-i
    coverage scale, block angle and full-circle block capacity for
    1 <= i <= T, with slot 0 left as padding.  ``T1`` is the first index
    whose boundary drops below C and ``T`` defaults to it.  ``T2_observed``,
    the first level whose black blocks cover less than pi/2, depends on a
    sampled graph and is written back by ``black_block_diagnostics``.
    """

    N: int
    alpha: float
    nu: float
    R: float
    epsilon: float
    lam: float
    C: float
    t: np.ndarray
    T: int
    T1: int
    theta: np.ndarray
    B: np.ndarray
    K: np.ndarray
    T2_observed: Optional[int] = None

    def residuals(self) -> np.ndarray:
        """Recurrence residual at every solved boundary (i >= 1)."""
        return np.array(
            [
                self.t[i]
                - _log_gain(self.t[i], self.nu, self.epsilon)
                - self.lam * self.t[i - 1]
                for i in range(1, len(self.t))
            ]
        )

    def contraction_condition(self, i: int, include_nu: bool = True) -> bool:
        """Sufficient condition for the contraction t_i < alpha * t_{i-1}.

        With ``include_nu`` (the default) the logarithm matches the
        recurrence; the nu-free variant is exposed for comparison, the two
        coincide at nu = 1.
        """
        nu = self.nu if include_nu else 1.0
        return bool(
            _log_gain(self.t[i], nu, self.epsilon)
            < (1.0 - self.alpha) * self.t[i]
        )

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "alpha": self.alpha,
            "nu": self.nu,
            "R": self.R,
            "epsilon": self.epsilon,
            "lambda": self.lam,
            "C": self.C,
            "t": [float(x) for x in self.t],
            "T": self.T,
            "T1": self.T1,
            "T2_observed": self.T2_observed,
            "theta_i": [float(x) for x in self.theta[1:]],
            "B_i": [float(x) for x in self.B[1:]],
            "K_i": [int(x) for x in self.K[1:]],
        }


def solve_band_recurrence(
    params: ModelParams, epsilon: float, C: float
) -> BandDecomposition:
    """Walk the band recurrence t_i - 2 ln(4 pi t_i/(nu(1-eps)^4)) = lam t_{i-1}.

    Starts from t_0 = R/2 and stops at the first boundary below C (= T1).
    Each step takes the root on the branch t > 2, where the left side is
    strictly increasing; the root is bisected inside
    [max(2, lam t_{i-1}), t_{i-1}] and polished with Newton steps.

    Raises DecompositionError when a step has no root there: either the
    would-be boundary fails to decrease (the log term dominates, which
    happens for small nu at moderate N) or it falls below lam * t_{i-1}.
    """
    if not 0.5 < params.alpha < 1.0:
        raise ParameterError(f"alpha={params.alpha} outside (1/2, 1)")
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon={epsilon} outside (0, 1)")
    if C <= 0.0:
        raise ParameterError(f"C={C} must be positive")
    lam = 2.0 * params.alpha - 1.0
    nu = params.nu
    t = [params.R / 2.0]
    while t[-1] >= C:
        target = lam * t[-1]

        def g(x: float) -> float:
            return x - float(_log_gain(x, nu, epsilon)) - target

        lo = max(2.0, target)
        hi = t[-1]
        if hi <= lo or g(hi) <= 0.0:
            raise DecompositionError(
                "band recurrence step does not decrease below "
                f"t={t[-1]:.6g} (N={params.N}, nu={nu}, epsilon={epsilon})"
            )
        if g(lo) >= 0.0:
            raise DecompositionError(
                f"band recurrence root falls below max(2, lam*t) = {lo:.6g}"
            )
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if g(mid) < 0.0:
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        for _ in range(4):  # g' = 1 - 2/x > 0 on this branch
            root -= g(root) / (1.0 - 2.0 / root)
        if not 2.0 <= root < t[-1] or abs(g(root)) > _RESIDUAL_TOL:
            raise DecompositionError(
                f"band recurrence step failed to converge (residual {g(root):.3g})"
            )
        t.append(root)
        if len(t) > 500:
            raise DecompositionError("band recurrence failed to terminate")
    t_arr = np.asarray(t, dtype=np.float64)
    T1 = len(t) - 1
    theta = np.full(T1 + 1, np.nan)
    B = np.full(T1 + 1, np.nan)
    K = np.zeros(T1 + 1, dtype=np.int64)
    for i in range(1, T1 + 1):
        theta[i] = (
            2.0 * (1.0 - epsilon) * math.exp((t_arr[i] + t_arr[i - 1] - params.R) / 2.0)
        )
        B[i] = theta[i] / t_arr[i]
        K[i] = int(TWO_PI / B[i])
    return BandDecomposition(
        N=params.N,
        alpha=params.alpha,
        nu=nu,
        R=params.R,
        epsilon=epsilon,
        lam=lam,
        C=C,
        t=t_arr,
        T=T1,
        T1=T1,
        theta=theta,
        B=B,
        K=K,
    )


def compute_C(
    alpha: float,
    nu: float,
    epsilon: float,
    rho: float,
    threshold_r: int,
    c_block: float = DEFAULT_C_BLOCK,
) -> float:
    """Smallest admissible type floor C on a 1.05-step geometric grid.

    A candidate is admissible when all of the following hold, with
    lam = 2 alpha - 1, eta = (1/alpha - alpha)/2 and x0 = nu(1-eps)^4/(4 pi):

      1. e^{-C alpha (1-alpha)} < epsilon
      2. every x on a log grid over [2, 1e6] with
         x - 2 ln(4 pi x/(nu(1-eps)^4)) >= lam C lies above x0
      3. (2/(lam C)) ln(4 pi lam C/(nu(1-eps)^4)) < (1 - lam)/2
      4. e^{-c rho^r lam C} / (1 - e^{-c rho^r (1-alpha) C}) < 1/8
      5. (a + 1) e^{-a} < (1 - eta^2)/(32 eta)  with  a = (1 - eta^2) C / 2
      6. C > max{(4/lam) alpha/(1-alpha^2), 2 alpha/((1-alpha)^2 (1+alpha))}

    Every condition is monotone in C, so the first passing grid point is
    the answer.  Raises ParameterError when the grid is exhausted.
    """
    if not 0.5 < alpha < 1.0:
        raise ParameterError(f"alpha={alpha} outside (1/2, 1)")
    if nu <= 0.0:
        raise ParameterError(f"nu={nu} must be positive")
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon={epsilon} outside (0, 1)")
    if not 0.0 < rho <= 1.0:
        raise ParameterError(f"rho={rho} outside (0, 1]")
    if threshold_r < 1:
        raise ParameterError(f"threshold_r={threshold_r} must be >= 1")
    if c_block <= 0.0:
        raise ParameterError(f"c_block={c_block} must be positive")
    lam = 2.0 * alpha - 1.0
    eta = (1.0 / alpha - alpha) / 2.0
    x0 = nu * (1.0 - epsilon) ** 4 / (4.0 * math.pi)
    grid_x = np.geomspace(2.0, 1.0e6, 4096)
    fx = grid_x - _log_gain(grid_x, nu, epsilon)
    rr = rho**threshold_r
    floor6 = max(
        (4.0 / lam) * alpha / (1.0 - alpha**2),
        2.0 * alpha / ((1.0 - alpha) ** 2 * (1.0 + alpha)),
    )

    C = 1.0
    while C <= _C_MAX:
        a = (1.0 - eta**2) * C / 2.0
        ok = (
            math.exp(-C * alpha * (1.0 - alpha)) < epsilon
            and not bool(np.any((fx >= lam * C) & (grid_x <= x0)))
            and (2.0 / (lam * C))
            * math.log(4.0 * math.pi * lam * C / (nu * (1.0 - epsilon) ** 4))
            < (1.0 - lam) / 2.0
            and math.exp(-c_block * rr * lam * C)
            / (1.0 - math.exp(-c_block * rr * (1.0 - alpha) * C))
            < 0.125
            and (a + 1.0) * math.exp(-a) < (1.0 - eta**2) / (32.0 * eta)
            and C > floor6
        )
        if ok:
            return C
        C *= _C_GRID_FACTOR
    raise ParameterError("no admissible C at or below 1e6 for these parameters")


@dataclass
class BandCensus:
    """Observed per-band vertex counts with their concentration bounds.

    ``counts[i]`` is the population of band i for 0 <= i <= T-1 (band 0 is
    {t > t_0}, band i is {t_i <= t < t_{i-1}}); ``remainder`` collects every
    vertex below the last census boundary, so counts sum with it to N.
    Bounds for i >= 1 are (1 -+ eps)^3 N e^{-alpha t_i}; band 0 gets the
    integral floor N (e^{-alpha R/2} - e^{-3 alpha R/4}) / 2 and no ceiling.
    """

    counts: np.ndarray
    remainder: int
    bounds_lo: np.ndarray
    bounds_hi: np.ndarray
    infected_counts: Optional[np.ndarray] = None

    def in_bounds(self) -> np.ndarray:
        return (self.counts >= self.bounds_lo) & (self.counts <= self.bounds_hi)

    def as_dict(self) -> dict:
        out = {
            "counts": [int(x) for x in self.counts],
            "remainder": int(self.remainder),
            "bounds_lo": [float(x) for x in self.bounds_lo],
            "bounds_hi": [float(x) for x in self.bounds_hi],
        }
        if self.infected_counts is not None:
            out["infected_counts"] = [int(x) for x in self.infected_counts]
        return out


def _check_same_model(g, bd: BandDecomposition) -> None:
    p = g.params
    if (
        p.N != bd.N
        or not math.isclose(p.alpha, bd.alpha)
        or not math.isclose(p.nu, bd.nu)
    ):
        raise ParameterError(
            "decomposition built for different model parameters "
            f"(N={bd.N}, alpha={bd.alpha}, nu={bd.nu} vs graph "
            f"N={p.N}, alpha={p.alpha}, nu={p.nu})"
        )


def _band_counts(types: np.ndarray, bd: BandDecomposition, nb: int) -> np.ndarray:
    counts = np.empty(nb, dtype=np.int64)
    counts[0] = np.count_nonzero(types > bd.t[0])
    for i in range(1, nb):
        counts[i] = np.count_nonzero((types >= bd.t[i]) & (types < bd.t[i - 1]))
    return counts


def band_census(g, bd: BandDecomposition, infected=None) -> BandCensus:
    """Count vertices per band 0..T-1 and attach the theoretical bounds.

    ``infected``, when given, is a boolean vertex mask whose per-band counts
    are reported alongside.  With T = 0 only band 0 is counted.
    """
    _check_same_model(g, bd)
    types = g.types
    nb = max(bd.T, 1)
    counts = _band_counts(types, bd, nb)
    remainder = int(g.n - counts.sum())
    N = float(bd.N)
    alpha = bd.alpha
    lo = np.empty(nb)
    hi = np.empty(nb)
    lo[0] = 0.5 * N * (math.exp(-alpha * bd.R / 2.0) - math.exp(-0.75 * alpha * bd.R))
    hi[0] = math.inf
    for i in range(1, nb):
        scale = N * math.exp(-alpha * bd.t[i])
        lo[i] = (1.0 - bd.epsilon) ** 3 * scale
        hi[i] = (1.0 + bd.epsilon) ** 3 * scale
    infected_counts = None
    if infected is not None:
        infected = np.asarray(infected, dtype=bool)
        if infected.shape != (g.n,):
            raise ParameterError("infected mask must have one entry per vertex")
        infected_counts = _band_counts(types[infected], bd, nb)
    return BandCensus(
        counts=counts,
        remainder=remainder,
        bounds_lo=lo,
        bounds_hi=hi,
        infected_counts=infected_counts,
    )


@dataclass
class BlockDiagnostics:
    """Level-by-level outcome of the black-block coloring.

    Level arrays are index-aligned like the decomposition (slot 0 padding,
    except ``Theta[0] = 2 pi``).  Band arrays: ``N_band`` holds observed
    band populations 0..T-1, ``N_prime`` qualified counts for bands 0..T,
    ``N_prime_floor`` the (1-delta) N_i rho^r / 4 floors for 1 <= i <= T-1
    and nan elsewhere.  ``qualified_total`` sums N_prime over bands 0..T-1
    for comparison against ``kappa * N``.
    """

    threshold_r: int
    rho: float
    delta: float
    c_block: float
    blocks_total: np.ndarray
    S: np.ndarray
    Theta: np.ndarray
    L: np.ndarray
    eps: np.ndarray
    M2: np.ndarray
    M1: np.ndarray
    N_band: np.ndarray
    N_prime: np.ndarray
    N_prime_floor: np.ndarray
    kappa: float
    qualified_total: int
    T2_observed: Optional[int]
    qualified_ids: list

    def as_dict(self) -> dict:
        def _nums(a):
            return [None if isinstance(x, float) and math.isnan(x) else float(x) for x in a]

        return {
            "threshold_r": self.threshold_r,
            "rho": self.rho,
            "delta": self.delta,
            "c_block": self.c_block,
            "blocks_total": [int(x) for x in self.blocks_total[1:]],
            "S_i": [int(x) for x in self.S[1:]],
            "Theta_i": [float(x) for x in self.Theta],
            "L_i": _nums(self.L[1:]),
            "eps_i": _nums(self.eps[1:]),
            "M2_i": _nums(self.M2[1:]),
            "M1_i": _nums(self.M1),
            "N_band": [int(x) for x in self.N_band],
            "N_prime": [int(x) for x in self.N_prime],
            "N_prime_floor": _nums(self.N_prime_floor),
            "kappa": self.kappa,
            "qualified_total": self.qualified_total,
            "T2_observed": self.T2_observed,
        }


def _coverage_counts(
    starts: np.ndarray,
    width: float,
    phi: np.ndarray,
    r_cov: np.ndarray,
    corner_r: float,
    R: float,
    cosh_R: float,
) -> np.ndarray:
    """Per-block count of vertices whose disk contains the whole block.

    A block is the annular sector over [start, start + width) reaching down
    to radius ``corner_r``; the distance from a fixed external point to a
    point of the sector is maximal at the two outer corners (it increases
    with the angular offset up to pi and is convex in the radius), so disk
    containment is decided exactly there.  An angular prefilter around each
    covering vertex keeps the candidate set small; every candidate is then
    confirmed with the exact comparator.
    """
    nblk = len(starts)
    counts = np.zeros(nblk, dtype=np.int64)
    if nblk == 0 or len(phi) == 0:
        return counts
    ends = starts + width
    tstar = adjacency_angle_exact(r_cov, corner_r, R) + _WINDOW_SLACK
    full = tstar >= math.pi
    narrow = np.flatnonzero(~full)
    if len(narrow):
        ext = np.concatenate((starts - TWO_PI, starts, starts + TWO_PI))
        ext_idx = np.tile(np.arange(nblk), 3)
        lo = np.searchsorted(ext, phi[narrow] - tstar[narrow], side="right")
        hi = np.searchsorted(ext, phi[narrow] + tstar[narrow] - width, side="left")
        num = np.maximum(hi - lo, 0)
        flat = _ragged_ranges(lo.astype(np.int64), num)
        cov = np.repeat(narrow, num)
        blk = ext_idx[flat]
        ok = (cosh_distance(r_cov[cov], phi[cov], corner_r, starts[blk]) < cosh_R) & (
            cosh_distance(r_cov[cov], phi[cov], corner_r, ends[blk]) < cosh_R
        )
        np.add.at(counts, blk[ok], 1)
    wide = np.flatnonzero(full)
    if len(wide):
        cov = np.repeat(wide, nblk)
        blk = np.tile(np.arange(nblk), len(wide))
        ok = (cosh_distance(r_cov[cov], phi[cov], corner_r, starts[blk]) < cosh_R) & (
            cosh_distance(r_cov[cov], phi[cov], corner_r, ends[blk]) < cosh_R
        )
        np.add.at(counts, blk[ok], 1)
    return counts


def _retained_degree_into(gp, ids: np.ndarray, target_mask: np.ndarray) -> np.ndarray:
    """Number of percolated edges from each of ``ids`` into ``target_mask``."""
    if len(ids) == 0:
        return np.zeros(0, dtype=np.int64)
    starts = gp.indptr[ids]
    lens = gp.indptr[ids + 1] - starts
    flat = _ragged_ranges(starts.astype(np.int64), lens)
    owner = np.repeat(np.arange(len(ids)), lens)
    hits = target_mask[gp.indices[flat]]
    return np.bincount(owner[hits], minlength=len(ids)).astype(np.int64)


def black_block_diagnostics(
    g,
    g_percolated,
    bd: BandDecomposition,
    threshold_r: int,
    rho: Optional[float] = None,
    delta: float = DEFAULT_DELTA,
    c_block: float = DEFAULT_C_BLOCK,
) -> BlockDiagnostics:
    """Run the level-by-level block coloring on a sampled graph.

    Level 1 tiles the circle with K_1 blocks of angle B_1; a block turns
    black when at least ``threshold_r`` band-0 vertices cover it entirely.
    A band-i vertex is qualified when it sits in a black level-i block and
    retains >= threshold_r percolated edges into the qualified set of band
    i-1 (band 0 qualifies wholesale).  Level i >= 2 subdivides each black
    parent block after trimming a theta^(i) margin on both sides, and its
    blocks require coverage by qualified band-(i-1) vertices.

    Reports black counts S_i with covered angles Theta_i = S_i B_i and
    their floors L_i, the per-level error scales, qualified counts per band
    with their floors and the admissibility constant kappa, and the first
    level whose covered angle drops below pi/2 (also written back to
    ``bd.T2_observed``).  ``rho`` is read from the percolated graph when
    omitted.
    """
    _check_same_model(g, bd)
    if g_percolated.n != g.n or g_percolated.params != g.params:
        raise ParameterError("percolated graph does not match the base graph")
    if rho is None:
        rho = getattr(g_percolated, "percolation_rho", None)
        if rho is None:
            raise ParameterError(
                "rho unknown: pass rho= or percolate via bond_percolate"
            )
    if threshold_r < 1:
        raise ParameterError(f"threshold_r={threshold_r} must be >= 1")
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta={delta} outside (0, 1)")
    if c_block <= 0.0:
        raise ParameterError(f"c_block={c_block} must be positive")

    R = g.params.R
    cosh_R = math.cosh(R)
    types = g.types
    T = bd.T
    rr = rho**threshold_r

    blocks_total = np.zeros(T + 1, dtype=np.int64)
    S = np.zeros(T + 1, dtype=np.int64)
    Theta = np.zeros(T + 1)
    Theta[0] = TWO_PI
    L = np.full(T + 1, np.nan)
    eps_i = np.full(T + 1, np.nan)
    M2 = np.full(T + 1, np.nan)
    N_prime = np.zeros(T + 1, dtype=np.int64)

    qualified_ids = [np.flatnonzero(types > bd.t[0])]
    N_prime[0] = len(qualified_ids[0])
    prev_black_starts = None

    for i in range(1, T + 1):
        if i == 1:
            starts = np.arange(bd.K[1]) * bd.B[1]
        elif prev_black_starts is None or len(prev_black_starts) == 0:
            starts = np.empty(0)
        else:
            per_parent = max(0, math.floor((bd.B[i - 1] - 2.0 * bd.theta[i]) / bd.B[i]))
            sub = bd.theta[i] + np.arange(per_parent) * bd.B[i]
            starts = (prev_black_starts[:, None] + sub[None, :]).ravel()
        blocks_total[i] = len(starts)

        prev = qualified_ids[i - 1]
        counts = _coverage_counts(
            starts, bd.B[i], g.theta[prev], g.r[prev], R - bd.t[i], R, cosh_R
        )
        black = counts >= threshold_r
        S[i] = int(black.sum())
        Theta[i] = S[i] * bd.B[i]
        black_starts = starts[black]
        prev_black_starts = black_starts

        band = np.flatnonzero((types >= bd.t[i]) & (types < bd.t[i - 1]))
        in_black = np.zeros(len(band), dtype=bool)
        if len(black_starts) and len(band):
            pos = np.searchsorted(black_starts, g.theta[band], side="right") - 1
            has = pos >= 0
            in_black[has] = g.theta[band[has]] < black_starts[pos[has]] + bd.B[i]
        cand = band[in_black]
        prev_mask = np.zeros(g.n, dtype=bool)
        prev_mask[prev] = True
        retained = _retained_degree_into(g_percolated, cand, prev_mask)
        qualified = cand[retained >= threshold_r]
        qualified_ids.append(qualified)
        N_prime[i] = len(qualified)

        eps_i[i] = bd.theta[i] ** (1.0 / 6.0)
        M2[i] = 1.0 / (bd.t[i] * bd.theta[i] ** (2.0 / 3.0))
        if i == 1:
            L[1] = bd.K[1] * (1.0 - math.exp(-bd.t[1]))
        else:
            L[i] = (
                S[i - 1]
                * (bd.B[i - 1] / bd.B[i] - 2.0 * bd.t[i])
                * (1.0 - math.exp(-c_block * rr * bd.t[i]))
            )

    nb = max(T, 1)
    N_band = _band_counts(types, bd, nb)
    M1 = delta**2 * N_band * rr / 8.0
    N_prime_floor = np.full(T + 1, np.nan)
    for i in range(1, T):
        N_prime_floor[i] = (1.0 - delta) * N_band[i] * rr / 4.0
    kappa = (
        (1.0 - bd.epsilon) ** 4
        * (1.0 - delta)
        * rr
        / 4.0
        * math.exp(-bd.alpha * bd.C / bd.lam)
    )
    qualified_total = int(N_prime[:T].sum()) if T >= 1 else 0

    T2 = None
    for i in range(1, T + 1):
        if Theta[i] < math.pi / 2.0:
            T2 = i
            break
    bd.T2_observed = T2

    return BlockDiagnostics(
        threshold_r=threshold_r,
        rho=float(rho),
        delta=delta,
        c_block=c_block,
        blocks_total=blocks_total,
        S=S,
        Theta=Theta,
        L=L,
        eps=eps_i,
        M2=M2,
        M1=M1,
        N_band=N_band,
        N_prime=N_prime,
        N_prime_floor=N_prime_floor,
        kappa=kappa,
        qualified_total=qualified_total,
        T2_observed=T2,
        qualified_ids=qualified_ids,
    )


@dataclass
class ErrorTermReport:
    """The three correction sums over levels 2..T-1 with their caps.

    The sums are empty (exactly zero) when T < 3, which is the normal
    outcome for type floors from ``compute_C`` at moderate N; deeper
    decompositions activate them.
    """

    angular_ratio_sum: float
    retention_sum: float
    concentration_sum: float
    angular_ratio_ok: bool
    retention_ok: bool
    concentration_ok: bool

    def as_dict(self) -> dict:
        return {
            "sums": {
                "angular_ratio": self.angular_ratio_sum,
                "retention": self.retention_sum,
                "concentration": self.concentration_sum,
            },
            "flags": {
                "angular_ratio": self.angular_ratio_ok,
                "retention": self.retention_ok,
                "concentration": self.concentration_ok,
            },
        }


def error_term_report(
    bd: BandDecomposition,
    rho: float,
    threshold_r: int,
    c_block: float = DEFAULT_C_BLOCK,
) -> ErrorTermReport:
    """Evaluate sum (theta^(i)/theta^(i-1)) t_{i-1}, sum e^{-c rho^r t_i}
    and sum (theta^(i))^{1/6} over i = 2..T-1 against 1/16, 1/8, 1/8."""
    if not 0.0 < rho <= 1.0:
        raise ParameterError(f"rho={rho} outside (0, 1]")
    rr = rho**threshold_r
    idx = range(2, bd.T)
    s1 = sum((bd.theta[i] / bd.theta[i - 1]) * bd.t[i - 1] for i in idx)
    s2 = sum(math.exp(-c_block * rr * bd.t[i]) for i in idx)
    s3 = sum(bd.theta[i] ** (1.0 / 6.0) for i in idx)
    return ErrorTermReport(
        angular_ratio_sum=float(s1),
        retention_sum=float(s2),
        concentration_sum=float(s3),
        angular_ratio_ok=s1 < 1.0 / 16.0,
        retention_ok=s2 < 0.125,
        concentration_ok=s3 < 0.125,
    )
