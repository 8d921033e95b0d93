"""Vectorized numpy implementations of the hot kernels.

This module is the pure-Python backend; ``hrgboot._speedups`` is the compiled
twin.  The two must stay in lockstep: same candidate enumeration, same
floating-point comparator (see ``geometry.cosh_distance``), same outputs.
Backend selection happens in ``hrgboot.kernels``.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

BACKEND_NAME = "python"


def _ragged_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Concatenate arange(start, start+count) for each row, vectorized."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    rep = np.repeat(starts, counts)
    offs = np.arange(total, dtype=np.int64) - np.repeat(
        np.cumsum(counts) - counts, counts
    )
    return rep + offs


def _confirm_edges(us, vs, dtheta, cosh_r, sinh_r, r, cosh_R):
    """Exact adjacency test on candidate pairs; dtheta already in [0, pi]."""
    s = np.sin(dtheta / 2.0) ** 2
    cosh_sum = cosh_r[us] * cosh_r[vs] + sinh_r[us] * sinh_r[vs]
    coshd = s * cosh_sum + (1.0 - s) * np.cosh(r[us] - r[vs])
    keep = coshd < cosh_R
    return us[keep], vs[keep]


def adjacency_bruteforce(r, theta, cosh_r, sinh_r, cosh_R):
    """All-pairs adjacency scan; returns (us, vs) with us < vs."""
    n = len(r)
    out_u, out_v = [], []
    # row blocks keep the pair matrices at a manageable size
    block = max(1, int(4e6 // max(n, 1)))
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        rows = np.arange(i0, i1)
        us = np.repeat(rows, n - rows - 1)
        vs = _ragged_ranges(rows + 1, n - rows - 1)
        if len(us) == 0:
            continue
        d = np.abs(theta[us] - theta[vs])
        d = np.minimum(d, TWO_PI - d)
        cu, cv = _confirm_edges(us, vs, d, cosh_r, sinh_r, r, cosh_R)
        out_u.append(cu)
        out_v.append(cv)
    if not out_u:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(out_u), np.concatenate(out_v)


def adjacency_windowed(
    r, theta, cosh_r, sinh_r, bucket_ptr, bucket_ids, window, full_scan, cosh_R
):
    """Bucketed angular-window adjacency scan.

    ``bucket_ids`` holds vertex ids grouped by type bucket (angle-sorted
    inside each bucket, CSR offsets in ``bucket_ptr``).  ``window[a, b]``
    is a proven superset of the exact adjacency angle for any pair drawn
    from buckets a and b, and ``full_scan[a, b]`` marks windows so wide the
    angular index is pointless.  Every candidate is confirmed with the exact
    comparator, so the windows only affect speed, never the edge set.
    """
    nb = len(bucket_ptr) - 1
    out_u, out_v = [], []

    per_bucket = [bucket_ids[bucket_ptr[b]: bucket_ptr[b + 1]] for b in range(nb)]
    per_theta = [theta[ids] for ids in per_bucket]
    # extended copies make circular windows plain interval lookups
    per_ext_theta = [
        np.concatenate((th - TWO_PI, th, th + TWO_PI)) for th in per_theta
    ]
    per_ext_ids = [np.tile(ids, 3) for ids in per_bucket]

    for a in range(nb):
        ids_a = per_bucket[a]
        if len(ids_a) == 0:
            continue
        th_a = per_theta[a]
        for b in range(a, nb):
            ids_b = per_bucket[b]
            if len(ids_b) == 0:
                continue
            w = window[a, b]
            nb_b = len(ids_b)
            if full_scan[a, b]:
                if a == b:
                    pos = np.arange(nb_b)
                    us = np.repeat(ids_b, nb_b - pos - 1)
                    vs = ids_b[_ragged_ranges(pos + 1, nb_b - pos - 1)]
                else:
                    us = np.repeat(ids_a, nb_b)
                    vs = np.tile(ids_b, len(ids_a))
                if len(us) == 0:
                    continue
                d = np.abs(theta[us] - theta[vs])
                d = np.minimum(d, TWO_PI - d)
            else:
                ext_th = per_ext_theta[b]
                ext_ids = per_ext_ids[b]
                if a == b:
                    # one-sided: only positions after u, so each unordered
                    # pair is visited exactly once
                    lo = np.arange(nb_b) + nb_b + 1
                    hi = np.searchsorted(ext_th, th_a + w, side="right")
                else:
                    lo = np.searchsorted(ext_th, th_a - w, side="left")
                    hi = np.searchsorted(ext_th, th_a + w, side="right")
                counts = np.maximum(hi - lo, 0)
                flat = _ragged_ranges(lo.astype(np.int64), counts)
                if len(flat) == 0:
                    continue
                us = np.repeat(ids_a, counts)
                vs = ext_ids[flat]
                d = np.abs(theta[us] - ext_th[flat])
            cu, cv = _confirm_edges(us, vs, d, cosh_r, sinh_r, r, cosh_R)
            out_u.append(cu)
            out_v.append(cv)
    if not out_u:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(out_u), np.concatenate(out_v)


def bootstrap_spread(indptr, indices, initial, r):
    """Threshold-r bootstrap from the ``initial`` mask, synchronous rounds.

    Returns (infected mask, activation round per vertex with -1 for never
    and 0 for seeds, newly-infected count per round starting at round 1).
    """
    n = len(initial)
    infected = initial.copy()
    round_of = np.where(initial, 0, -1).astype(np.int64)
    cnt = np.zeros(n, dtype=np.int64)
    frontier = np.flatnonzero(initial)
    per_round = []
    rnd = 0
    while len(frontier):
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        nbrs = indices[_ragged_ranges(starts.astype(np.int64), counts)]
        np.add.at(cnt, nbrs, 1)
        newly = np.flatnonzero((cnt >= r) & ~infected)
        rnd += 1
        if len(newly) == 0:
            break
        infected[newly] = True
        round_of[newly] = rnd
        per_round.append(len(newly))
        frontier = newly
    return infected, round_of, np.asarray(per_round, dtype=np.int64)


def peel_to_core(indptr, indices, r):
    """Iteratively remove vertices of degree < r; returns the survivor mask."""
    n = len(indptr) - 1
    alive = np.ones(n, dtype=bool)
    deg = np.diff(indptr).astype(np.int64)
    while True:
        kill = np.flatnonzero(alive & (deg < r))
        if len(kill) == 0:
            return alive
        alive[kill] = False
        starts = indptr[kill]
        counts = indptr[kill + 1] - starts
        nbrs = indices[_ragged_ranges(starts.astype(np.int64), counts)]
        np.add.at(deg, nbrs[alive[nbrs]], -1)
        deg[kill] = 0


def local_clustering(indptr, indices):
    """Per-vertex local clustering coefficient (0 where degree < 2)."""
    from scipy import sparse

    n = len(indptr) - 1
    deg = np.diff(indptr).astype(np.int64)
    a = sparse.csr_matrix(
        (np.ones(len(indices), dtype=np.float64), indices, indptr), shape=(n, n)
    )
    tri2 = np.empty(n, dtype=np.float64)  # = 2 * triangles incident per vertex
    # chunk so the intermediate product stays near 2e7 stored entries
    # (its row nnz is bounded by the summed neighbor degrees)
    work = float((deg.astype(np.float64) ** 2).sum())
    block = max(1, int(n * 2e7 / max(work, 1.0)))
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        chunk = a[i0:i1]
        tri2[i0:i1] = np.asarray(
            (chunk @ a).multiply(chunk).sum(axis=1)
        ).ravel()
    cc = np.zeros(n, dtype=np.float64)
    mask = deg >= 2
    cc[mask] = tri2[mask] / (deg[mask] * (deg[mask] - 1.0))
    return cc
