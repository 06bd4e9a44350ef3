# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled table-scan kernels. Same contracts as ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t idx_t
ctypedef cnp.uint8_t flag_t


def first_assoc_violation(mul_in):
    cdef const idx_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef Py_ssize_t n = mul.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    return (a, b, c)
    return None


def first_distrib_violation(mul_in, join_in):
    cdef const idx_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef const idx_t[:, ::1] join = np.ascontiguousarray(join_in, dtype=np.int64)
    cdef Py_ssize_t n = mul.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a, join[b, c]] != join[mul[a, b], mul[a, c]]:
                    return (a, b, c)
    return None


def strongly_hollow_mask(leq_in, join_in):
    cdef const flag_t[:, ::1] leq = np.ascontiguousarray(leq_in, dtype=np.uint8)
    cdef const idx_t[:, ::1] join = np.ascontiguousarray(join_in, dtype=np.int64)
    cdef Py_ssize_t n = leq.shape[0], a, j, k
    out = np.ones(n, dtype=bool)
    cdef cnp.npy_bool[::1] res = out
    for a in range(n):
        for j in range(n):
            if leq[a, j]:
                continue
            for k in range(j, n):
                if not leq[a, k] and leq[a, join[j, k]]:
                    res[a] = 0
                    break
            if not res[a]:
                break
    return out


def residual_table(leq_in, mul_in, join_in, Py_ssize_t bottom):
    cdef const flag_t[:, ::1] leq = np.ascontiguousarray(leq_in, dtype=np.uint8)
    cdef const idx_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef const idx_t[:, ::1] join = np.ascontiguousarray(join_in, dtype=np.int64)
    cdef Py_ssize_t n = leq.shape[0], a, b, x
    cdef idx_t acc
    out = np.empty((n, n), dtype=np.int64)
    cdef idx_t[:, ::1] res = out
    for a in range(n):
        for b in range(n):
            acc = bottom
            for x in range(n):
                if leq[mul[x, b], a]:
                    acc = join[acc, x]
            res[a, b] = acc
    return out


def principal_masks(leq_in, join_in, meet_in, mul_in, res_in,
                    Py_ssize_t bottom, Py_ssize_t top):
    cdef const idx_t[:, ::1] join = np.ascontiguousarray(join_in, dtype=np.int64)
    cdef const idx_t[:, ::1] meet = np.ascontiguousarray(meet_in, dtype=np.int64)
    cdef const idx_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef const idx_t[:, ::1] res = np.ascontiguousarray(res_in, dtype=np.int64)
    cdef Py_ssize_t n = join.shape[0], e, a, b
    cdef bint ok
    mp = np.zeros(n, dtype=bool)
    jp = np.zeros(n, dtype=bool)
    wm = np.zeros(n, dtype=bool)
    wj = np.zeros(n, dtype=bool)
    cdef cnp.npy_bool[::1] vmp = mp, vjp = jp, vwm = wm, vwj = wj
    for e in range(n):
        ok = True
        for a in range(n):
            for b in range(n):
                if meet[a, mul[b, e]] != mul[meet[res[a, e], b], e]:
                    ok = False
                    break
            if not ok:
                break
        vmp[e] = ok
        ok = True
        for a in range(n):
            for b in range(n):
                if join[a, res[b, e]] != res[join[mul[a, e], b], e]:
                    ok = False
                    break
            if not ok:
                break
        vjp[e] = ok
        ok = True
        for a in range(n):
            if meet[e, a] != mul[res[a, e], e]:
                ok = False
                break
        vwm[e] = ok
        ok = True
        for a in range(n):
            if join[a, res[bottom, e]] != res[mul[a, e], e]:
                ok = False
                break
        vwj[e] = ok
    return mp, jp, wm, wj
