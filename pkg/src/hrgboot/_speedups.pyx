# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.

Reference implementations live in ``hrgboot._pykernels``; the two backends
enumerate the same candidates and share the adjacency comparator expression,
so they produce identical graphs.  Keep any change mirrored there.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, cosh, fabs, sin
from libc.stdlib cimport free, malloc, realloc

cnp.import_array()

BACKEND_NAME = "cython"

cdef double TWO_PI = 2.0 * M_PI


cdef struct EdgeBuf:
    cnp.int64_t* u
    cnp.int64_t* v
    Py_ssize_t size
    Py_ssize_t cap


cdef int _push(EdgeBuf* b, cnp.int64_t uu, cnp.int64_t vv) except -1:
    cdef cnp.int64_t* p
    if b.size == b.cap:
        b.cap = b.cap * 2 if b.cap else 4096
        p = <cnp.int64_t*> realloc(b.u, b.cap * sizeof(cnp.int64_t))
        if p == NULL:
            raise MemoryError()
        b.u = p
        p = <cnp.int64_t*> realloc(b.v, b.cap * sizeof(cnp.int64_t))
        if p == NULL:
            raise MemoryError()
        b.v = p
    b.u[b.size] = uu
    b.v[b.size] = vv
    b.size += 1
    return 0


cdef _collect(EdgeBuf* b):
    us = np.empty(b.size, dtype=np.int64)
    vs = np.empty(b.size, dtype=np.int64)
    cdef cnp.int64_t[::1] mu = us
    cdef cnp.int64_t[::1] mv = vs
    cdef Py_ssize_t i
    for i in range(b.size):
        mu[i] = b.u[i]
        mv[i] = b.v[i]
    free(b.u)
    free(b.v)
    return us, vs


cdef inline bint _is_edge(double dtheta, double ru, double rv, double cucv_susv,
                          double cosh_R) nogil:
    # same expression as _pykernels._confirm_edges
    cdef double s = sin(dtheta / 2.0)
    s = s * s
    return s * cucv_susv + (1.0 - s) * cosh(ru - rv) < cosh_R


def adjacency_bruteforce(double[::1] r, double[::1] theta, double[::1] cosh_r,
                         double[::1] sinh_r, double cosh_R):
    cdef Py_ssize_t n = r.shape[0]
    cdef Py_ssize_t i, j
    cdef double d, cs
    cdef EdgeBuf buf
    buf.u = NULL; buf.v = NULL; buf.size = 0; buf.cap = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = fabs(theta[i] - theta[j])
            if d > TWO_PI - d:
                d = TWO_PI - d
            cs = cosh_r[i] * cosh_r[j] + sinh_r[i] * sinh_r[j]
            if _is_edge(d, r[i], r[j], cs, cosh_R):
                _push(&buf, i, j)
    return _collect(&buf)


def adjacency_windowed(double[::1] r, double[::1] theta, double[::1] cosh_r,
                       double[::1] sinh_r, cnp.int64_t[::1] bucket_ptr,
                       cnp.int64_t[::1] bucket_ids, double[:, ::1] window,
                       object full_scan, double cosh_R):
    cdef cnp.uint8_t[:, ::1] full = np.ascontiguousarray(full_scan, dtype=np.uint8)
    cdef Py_ssize_t nb = bucket_ptr.shape[0] - 1
    cdef Py_ssize_t n = r.shape[0]
    cdef double* ext_th = <double*> malloc(3 * n * sizeof(double))
    cdef cnp.int64_t* ext_id = <cnp.int64_t*> malloc(3 * n * sizeof(cnp.int64_t))
    if ext_th == NULL or ext_id == NULL:
        free(ext_th); free(ext_id)
        raise MemoryError()
    cdef Py_ssize_t a, b, k, m, j, base, na, nbb, lo, hi
    cdef cnp.int64_t u, v
    cdef double w, tu, d, cs
    cdef EdgeBuf buf
    buf.u = NULL; buf.v = NULL; buf.size = 0; buf.cap = 0

    for b in range(nb):
        nbb = bucket_ptr[b + 1] - bucket_ptr[b]
        base = 3 * bucket_ptr[b]
        for k in range(nbb):
            v = bucket_ids[bucket_ptr[b] + k]
            ext_th[base + k] = theta[v] - TWO_PI
            ext_th[base + nbb + k] = theta[v]
            ext_th[base + 2 * nbb + k] = theta[v] + TWO_PI
            ext_id[base + k] = v
            ext_id[base + nbb + k] = v
            ext_id[base + 2 * nbb + k] = v

    try:
        for a in range(nb):
            na = bucket_ptr[a + 1] - bucket_ptr[a]
            if na == 0:
                continue
            for b in range(a, nb):
                nbb = bucket_ptr[b + 1] - bucket_ptr[b]
                if nbb == 0:
                    continue
                w = window[a, b]
                base = 3 * bucket_ptr[b]
                if full[a, b]:
                    if a == b:
                        for k in range(nbb):
                            u = bucket_ids[bucket_ptr[b] + k]
                            for m in range(k + 1, nbb):
                                v = bucket_ids[bucket_ptr[b] + m]
                                d = fabs(theta[u] - theta[v])
                                if d > TWO_PI - d:
                                    d = TWO_PI - d
                                cs = cosh_r[u] * cosh_r[v] + sinh_r[u] * sinh_r[v]
                                if _is_edge(d, r[u], r[v], cs, cosh_R):
                                    _push(&buf, u, v)
                    else:
                        for k in range(na):
                            u = bucket_ids[bucket_ptr[a] + k]
                            for m in range(nbb):
                                v = bucket_ids[bucket_ptr[b] + m]
                                d = fabs(theta[u] - theta[v])
                                if d > TWO_PI - d:
                                    d = TWO_PI - d
                                cs = cosh_r[u] * cosh_r[v] + sinh_r[u] * sinh_r[v]
                                if _is_edge(d, r[u], r[v], cs, cosh_R):
                                    _push(&buf, u, v)
                elif a == b:
                    # one-sided window over the extended angle line: each
                    # unordered pair visited exactly once (w < pi here)
                    hi = 0
                    for k in range(nbb):
                        u = bucket_ids[bucket_ptr[b] + k]
                        tu = theta[u]
                        lo = nbb + k + 1
                        if hi < lo:
                            hi = lo
                        while hi < 3 * nbb and ext_th[base + hi] <= tu + w:
                            hi += 1
                        for j in range(lo, hi):
                            v = ext_id[base + j]
                            d = fabs(tu - ext_th[base + j])
                            cs = cosh_r[u] * cosh_r[v] + sinh_r[u] * sinh_r[v]
                            if _is_edge(d, r[u], r[v], cs, cosh_R):
                                _push(&buf, u, v)
                else:
                    lo = 0
                    hi = 0
                    for k in range(na):
                        u = bucket_ids[bucket_ptr[a] + k]
                        tu = theta[u]
                        while lo < 3 * nbb and ext_th[base + lo] < tu - w:
                            lo += 1
                        if hi < lo:
                            hi = lo
                        while hi < 3 * nbb and ext_th[base + hi] <= tu + w:
                            hi += 1
                        for j in range(lo, hi):
                            v = ext_id[base + j]
                            d = fabs(tu - ext_th[base + j])
                            cs = cosh_r[u] * cosh_r[v] + sinh_r[u] * sinh_r[v]
                            if _is_edge(d, r[u], r[v], cs, cosh_R):
                                _push(&buf, u, v)
    finally:
        free(ext_th)
        free(ext_id)
    return _collect(&buf)


def bootstrap_spread(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices,
                     object initial, long r):
    n = len(initial)
    infected = initial.copy()
    round_of = np.where(initial, 0, -1).astype(np.int64)
    cdef cnp.uint8_t[::1] inf = infected.view(np.uint8)
    cdef cnp.int64_t[::1] rof = round_of
    cdef cnp.int64_t[::1] cnt = np.zeros(n, dtype=np.int64)
    seeds = np.flatnonzero(initial).astype(np.int64)
    # both ping-pong buffers need full capacity: either can be the write
    # target once they start swapping
    frontier_arr = np.empty(n, dtype=np.int64)
    frontier_arr[: seeds.shape[0]] = seeds
    next_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] frontier = frontier_arr
    cdef cnp.int64_t[::1] nxt = next_arr
    cdef Py_ssize_t fsize = seeds.shape[0]
    cdef Py_ssize_t nsize, idx
    cdef cnp.int64_t u, v, jj, rnd = 0
    per_round = []
    while fsize:
        rnd += 1
        nsize = 0
        for idx in range(fsize):
            u = frontier[idx]
            for jj in range(indptr[u], indptr[u + 1]):
                v = indices[jj]
                cnt[v] += 1
                if cnt[v] >= r and rof[v] == -1:
                    rof[v] = rnd
                    inf[v] = 1
                    nxt[nsize] = v
                    nsize += 1
        if nsize == 0:
            break
        per_round.append(nsize)
        frontier_arr, next_arr = next_arr, frontier_arr
        frontier = frontier_arr
        nxt = next_arr
        fsize = nsize
    return infected, round_of, np.asarray(per_round, dtype=np.int64)


def peel_to_core(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices, long r):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    alive_arr = np.ones(n, dtype=bool)
    deg_arr = np.diff(indptr).astype(np.int64)
    cdef cnp.uint8_t[::1] alive = alive_arr.view(np.uint8)
    cdef cnp.int64_t[::1] deg = deg_arr
    stack_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef Py_ssize_t sp = 0
    cdef cnp.int64_t v, w, jj
    cdef Py_ssize_t i
    for i in range(n):
        if deg[i] < r:
            stack[sp] = i
            sp += 1
    while sp:
        sp -= 1
        v = stack[sp]
        alive[v] = 0
        for jj in range(indptr[v], indptr[v + 1]):
            w = indices[jj]
            if alive[w]:
                deg[w] -= 1
                if deg[w] == r - 1:
                    stack[sp] = w
                    sp += 1
    return alive_arr


def local_clustering(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    tri2_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] tri2 = tri2_arr
    cdef cnp.int64_t u, v, jj, c
    cdef cnp.int64_t p, q, pe, qe
    for v in range(n):
        for jj in range(indptr[v], indptr[v + 1]):
            u = indices[jj]
            if u <= v:
                continue
            # sorted-list intersection = triangles through edge (v, u)
            c = 0
            p = indptr[v]; pe = indptr[v + 1]
            q = indptr[u]; qe = indptr[u + 1]
            while p < pe and q < qe:
                if indices[p] < indices[q]:
                    p += 1
                elif indices[p] > indices[q]:
                    q += 1
                else:
                    c += 1
                    p += 1
                    q += 1
            tri2[v] += c
            tri2[u] += c
    deg = np.diff(indptr).astype(np.int64)
    cc = np.zeros(n, dtype=np.float64)
    mask = deg >= 2
    cc[mask] = tri2_arr[mask] / (deg[mask] * (deg[mask] - 1.0))
    return cc
