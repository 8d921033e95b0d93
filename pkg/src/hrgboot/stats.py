"""Summary statistics of sampled graphs: degree tail, clustering, components.

The degree distribution has a power-law density with exponent 2*alpha + 1,
so the complementary CDF decays with exponent 2*alpha.  ``hill_estimator``
estimates the CCDF exponent on the top tail and reports it shifted back to
the density convention, i.e. the returned value targets 2*alpha + 1.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import ParameterError
from .graph import Graph, connected_components


def hill_estimator(degrees, tail_fraction: float = 0.01) -> float:
    """Tail-exponent estimate (density convention) from the top tail.

    Uses the k = ceil(tail_fraction * n) largest observations X_(1) >= ...
    >= X_(k) against the threshold X_(k+1):

        gamma_hat = (1/k) sum_i ln(X_(i) / X_(k+1))

    and returns 1 + 1/gamma_hat.  Returns nan when the tail is degenerate
    (all tied, or threshold < 1).
    """
    if not 0.0 < tail_fraction < 1.0:
        raise ParameterError(f"tail_fraction must lie in (0, 1), got {tail_fraction!r}")
    x = np.asarray(degrees, dtype=np.float64)
    k = int(math.ceil(tail_fraction * x.size))
    if x.size < k + 1 or k < 1:
        return float("nan")
    # top k+1 values, descending
    top = np.sort(np.partition(x, x.size - k - 1)[x.size - k - 1:])[::-1]
    threshold = top[k]
    if threshold < 1.0:
        return float("nan")
    s = float(np.log(top[:k] / threshold).sum())
    if s <= 0.0:
        return float("nan")
    return 1.0 + k / s


def local_clustering(g: Graph) -> np.ndarray:
    """Per-vertex clustering coefficient; 0 for degree < 2."""
    return kernels.local_clustering(g.indptr, g.indices)


def mean_clustering(g: Graph) -> float:
    """Mean of the local clustering coefficients over all vertices."""
    if g.n == 0:
        return 0.0
    return float(local_clustering(g).mean())


def degree_histogram(degrees) -> tuple[np.ndarray, np.ndarray]:
    """(values, counts) over the distinct degrees, ascending."""
    values, counts = np.unique(np.asarray(degrees, dtype=np.int64), return_counts=True)
    return values, counts


def degree_ccdf(degrees) -> tuple[np.ndarray, np.ndarray]:
    """(values, P[D >= value]) over the distinct degrees, ascending."""
    values, counts = degree_histogram(degrees)
    n = counts.sum()
    # P[D >= v] = 1 - P[D < v]; cumsum up to but excluding v
    below = np.concatenate(([0], np.cumsum(counts)[:-1]))
    return values, (n - below) / n


def graph_summary(g: Graph) -> dict:
    """Degree/clustering/component summary used by the stats command."""
    deg = g.degree_sequence()
    values, counts = degree_histogram(deg)
    _, sizes = connected_components(g)
    l1 = int(sizes.max()) if sizes.size else 0
    return {
        "N": g.n,
        "alpha": g.params.alpha,
        "nu": g.params.nu,
        "R": g.params.R,
        "seed": g.params.seed,
        "edge_count": g.edge_count,
        "mean_degree": g.mean_degree(),
        "max_degree": int(deg.max()) if deg.size else 0,
        "degree_histogram": {
            "values": values.tolist(),
            "counts": counts.tolist(),
        },
        "hill_exponent": hill_estimator(deg),
        "mean_clustering": mean_clustering(g),
        "l1": l1,
        "l1_fraction": l1 / g.n if g.n else 0.0,
    }
