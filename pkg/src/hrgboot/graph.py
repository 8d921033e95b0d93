"""Graph construction, bond percolation, components and serialization.

Vertices are relabelled 0..N-1 in increasing angle order straight after
sampling, so per-bucket vertex lists stay angle-sorted for free and the edge
list has a canonical order.  The windowed builder never decides adjacency
from a window: windows are proven supersets of the exact adjacency angle
(evaluated at bucket extremes, where the threshold is largest), and every
candidate is confirmed with the exact comparator, so ``windowed`` and
``exact_bruteforce`` produce identical edge sets.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GraphFileError, ParameterError
from .geometry import (
    DEFAULT_C0,
    DEFAULT_EPSILON,
    TWO_PI,
    ModelParams,
    adjacency_angle_exact,
    sample_points,
)
from .rng import EDGE_STREAM, keyed_unit

DEFAULT_BUCKET_WIDTH = 0.5

FILE_SCHEMA = "hrgboot-graph"
FILE_VERSION = 1


@dataclass(frozen=True)
class Vertex:
    id: int
    r: float
    theta: float
    t: float  # type, R - r


class Graph:
    """Immutable sampled graph with CSR adjacency and a canonical edge list."""

    def __init__(self, params: ModelParams, r, theta, edges):
        self.params = params
        self.r = np.ascontiguousarray(r, dtype=np.float64)
        self.theta = np.ascontiguousarray(theta, dtype=np.float64)
        self.edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
        self.indptr, self.indices = _edges_to_csr(params.N, self.edges)

    @property
    def n(self) -> int:
        return self.params.N

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def types(self) -> np.ndarray:
        return self.params.R - self.r

    def vertex(self, i: int) -> Vertex:
        return Vertex(i, float(self.r[i]), float(self.theta[i]), float(self.params.R - self.r[i]))

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]: self.indptr[i + 1]]

    def degree_sequence(self) -> np.ndarray:
        return np.diff(self.indptr).astype(np.int64)

    def mean_degree(self) -> float:
        return 2.0 * self.edge_count / self.n

    def adjacency_matrix(self):
        from scipy import sparse

        data = np.ones(len(self.indices), dtype=np.int8)
        return sparse.csr_matrix(
            (data, self.indices, self.indptr), shape=(self.n, self.n)
        )


def _edges_to_csr(n: int, edges: np.ndarray):
    if len(edges) == 0:
        return np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int32)
    src = np.concatenate((edges[:, 0], edges[:, 1]))
    dst = np.concatenate((edges[:, 1], edges[:, 0]))
    order = np.lexsort((dst, src))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst[order].astype(np.int32)


def _canonical_edges(us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    lo = np.minimum(us, vs)
    hi = np.maximum(us, vs)
    order = np.lexsort((hi, lo))
    edges = np.stack((lo[order], hi[order]), axis=1).astype(np.int64)
    if len(edges) > 1:
        dup = np.all(edges[1:] == edges[:-1], axis=1)
        if dup.any():  # would indicate a kernel bug, never expected
            raise AssertionError("duplicate edges emitted by adjacency kernel")
    return edges


def _bucket_layout(types: np.ndarray, R: float, width: float):
    """Group vertex ids by type bucket; ids stay angle-sorted per bucket."""
    bucket_of = np.minimum((types / width).astype(np.int64), int(R / width))
    nb = int(bucket_of.max()) + 1 if len(bucket_of) else 1
    order = np.argsort(bucket_of, kind="stable")
    counts = np.bincount(bucket_of, minlength=nb)
    ptr = np.zeros(nb + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    t_hi = np.minimum((np.arange(nb) + 1.0) * width, R)
    return ptr, order.astype(np.int64), t_hi


def _bucket_windows(t_hi: np.ndarray, R: float, epsilon: float, c0: float):
    """Per-bucket-pair superset windows for the relative angle.

    Low-type pairs use the exponential upper bound at the bucket type
    ceilings; the rest use the exact threshold angle at the bucket radius
    floors (the threshold decreases in each radius, so bucket extremes
    dominate every pair inside).  A window of pi disables the angular index
    for that pair of buckets.
    """
    tsum = t_hi[:, None] + t_hi[None, :]
    exp_ok = tsum < R - c0
    with np.errstate(over="ignore"):
        win = np.where(exp_ok, 2.0 * (1.0 + epsilon) * np.exp((tsum - R) / 2.0), 0.0)
    r_min = np.maximum(R - t_hi, 0.0)
    exact = adjacency_angle_exact(r_min[:, None], r_min[None, :], R) + 1e-9
    win = np.where(exp_ok, win, exact)
    win = np.minimum(win, math.pi)
    full = win >= math.pi - 1e-12
    return np.ascontiguousarray(win), np.ascontiguousarray(full)


def build_graph(
    params: ModelParams,
    mode: str = "windowed",
    epsilon: float = DEFAULT_EPSILON,
    c0: float = DEFAULT_C0,
    bucket_width: float = DEFAULT_BUCKET_WIDTH,
) -> Graph:
    """Sample N points and connect every pair at hyperbolic distance < R."""
    r0, th0 = sample_points(params)
    order = np.argsort(th0, kind="stable")
    r = np.ascontiguousarray(r0[order])
    theta = np.ascontiguousarray(th0[order])
    cosh_R = math.cosh(params.R)
    cosh_r = np.cosh(r)
    sinh_r = np.sinh(r)

    if mode == "exact_bruteforce":
        us, vs = kernels.adjacency_bruteforce(r, theta, cosh_r, sinh_r, cosh_R)
    elif mode == "windowed":
        ptr, ids, t_hi = _bucket_layout(params.R - r, params.R, bucket_width)
        window, full = _bucket_windows(t_hi, params.R, epsilon, c0)
        us, vs = kernels.adjacency_windowed(
            r, theta, cosh_r, sinh_r, ptr, ids, window, full, cosh_R
        )
    else:
        raise ParameterError(f"unknown build mode {mode!r}")
    return Graph(params, r, theta, _canonical_edges(us, vs))


def bond_percolate(g: Graph, rho: float, seed: int) -> Graph:
    """Keep each edge independently with probability rho.

    Retention is a pure hash of (seed, endpoint pair), so the kept set does
    not depend on edge enumeration order, and subgraphs of the same graph
    under the same seed are consistent with each other.
    """
    if not 0.0 < rho <= 1.0:
        raise ParameterError(f"rho must lie in (0, 1], got {rho!r}")
    if len(g.edges) == 0:
        kept = g.edges
    else:
        u = keyed_unit(seed, EDGE_STREAM, g.edges[:, 0].astype(np.uint64),
                       g.edges[:, 1].astype(np.uint64))
        kept = g.edges[u < rho]
    out = Graph.__new__(Graph)
    out.params = g.params
    out.r = g.r
    out.theta = g.theta
    out.edges = kept
    out.indptr, out.indices = _edges_to_csr(g.n, kept)
    out.percolation_rho = rho
    return out


def connected_components(g: Graph):
    """Component labels and sizes; sizes[labels[v]] is v's component size."""
    from scipy.sparse import csgraph

    ncomp, labels = csgraph.connected_components(g.adjacency_matrix(), directed=False)
    sizes = np.bincount(labels, minlength=ncomp).astype(np.int64)
    return labels, sizes


def largest_component_size(g: Graph) -> int:
    _, sizes = connected_components(g)
    return int(sizes.max())


def save_graph(g: Graph, path) -> None:
    """Write the graph to a self-describing JSON file (bit-exact floats)."""
    payload = {
        "n": g.n,
        "alpha": g.params.alpha,
        "nu": g.params.nu,
        "seed": g.params.seed,
        "vertices": [[float.hex(float(r)), float.hex(float(t))]
                     for r, t in zip(g.r, g.theta)],
        "edges": g.edges.tolist(),
    }
    doc = {
        "schema": FILE_SCHEMA,
        "version": FILE_VERSION,
        "R": g.params.R,
        "edge_count": g.edge_count,
        "checksum": _payload_checksum(payload),
        **payload,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def _payload_checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


_BRACKETS = str.maketrans("", "", "[]")


def _decode_compact(text: str):
    """Decode the writer's own compact layout without materializing edges.

    json.load builds one Python list per edge, which exhausts memory around
    3e7 edges (reference-scale census graphs); in the compact layout the edge
    array text can be spliced out and handed to numpy's C parser instead,
    with the checksum streamed around the splice.  Returns (doc, edges,
    checksum) or None when the text is not the compact writer form; the
    caller then takes the generic json path.
    """
    i = text.find('"edges":[')
    if i < 0:
        return None
    start = i + len('"edges":')
    if text.startswith("[]", start):
        end = start + 2
    else:
        end = text.find("]]", start)
        if end < 0:
            return None
        end += 2
    edges_text = text[start:end]
    try:
        doc = json.loads(text[:start] + "[]" + text[end:])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            flat = np.fromstring(
                edges_text.translate(_BRACKETS), dtype=np.int64, sep=","
            )
        edges = flat.reshape(-1, 2)
        payload = {k: doc[k] for k in ("n", "alpha", "nu", "seed", "vertices", "edges")}
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        j = blob.index('"edges":[]')
        digest = hashlib.sha256()
        for part in (blob[: j + 8], edges_text, blob[j + 10 :]):
            digest.update(part.encode())
    except (KeyError, TypeError, ValueError, Warning):
        return None
    return doc, edges, digest.hexdigest()


def load_graph(path) -> Graph:
    """Read and validate a graph file; raises GraphFileError on any defect."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    decoded = _decode_compact(text)
    if decoded is None:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFileError(f"{path}: truncated or invalid JSON: {exc}") from None
        edges = None
        checksum = None
    else:
        doc, edges, checksum = decoded
    del text
    try:
        if doc["schema"] != FILE_SCHEMA or doc["version"] != FILE_VERSION:
            raise GraphFileError(f"{path}: unknown schema/version")
        if checksum is None:
            payload = {k: doc[k] for k in ("n", "alpha", "nu", "seed", "vertices", "edges")}
            checksum = _payload_checksum(payload)
        if checksum != doc["checksum"]:
            raise GraphFileError(f"{path}: checksum mismatch")
        params = ModelParams(N=doc["n"], alpha=doc["alpha"], nu=doc["nu"], seed=doc["seed"])
        if not math.isclose(params.R, doc["R"], rel_tol=1e-12):
            raise GraphFileError(f"{path}: stored R inconsistent with n and nu")
        if len(doc["vertices"]) != params.N:
            raise GraphFileError(f"{path}: vertex table length != n")
        r = np.array([float.fromhex(v[0]) for v in doc["vertices"]])
        theta = np.array([float.fromhex(v[1]) for v in doc["vertices"]])
        if edges is None:
            raw = np.asarray(doc["edges"])
            if raw.size and raw.dtype.kind != "i":
                raise GraphFileError(f"{path}: edge list must contain integers")
            edges = raw.astype(np.int64).reshape(-1, 2)
        if doc["edge_count"] != len(edges):
            raise GraphFileError(f"{path}: edge_count != edge list length")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFileError):
            raise
        raise GraphFileError(f"{path}: malformed graph file: {exc}") from None
    _validate_arrays(path, params, r, theta, edges)
    return Graph(params, r, theta, edges)


def _validate_arrays(path, params, r, theta, edges):
    if np.any(r < 0) or np.any(r > params.R):
        raise GraphFileError(f"{path}: vertex radius outside [0, R]")
    if np.any(theta < 0) or np.any(theta >= TWO_PI):
        raise GraphFileError(f"{path}: vertex angle outside [0, 2*pi)")
    if np.any(np.diff(theta) < 0):
        raise GraphFileError(f"{path}: vertices not sorted by angle")
    if len(edges):
        if edges.min() < 0 or edges.max() >= params.N:
            raise GraphFileError(f"{path}: edge endpoint out of range")
        if np.any(edges[:, 0] >= edges[:, 1]):
            raise GraphFileError(
                f"{path}: edges must be stored as (min, max) pairs; "
                "self-loops are not allowed"
            )
        key = edges[:, 0] * params.N + edges[:, 1]
        if np.any(np.diff(key) <= 0):
            raise GraphFileError(f"{path}: edge list not sorted or has duplicates")
