# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def sow_keys(U, V, lookup, long q, weights):
    cdef const int64_t[:, ::1] u = np.ascontiguousarray(U, dtype=np.int64)
    cdef const int64_t[:, ::1] v = np.ascontiguousarray(V, dtype=np.int64)
    cdef const int64_t[::1] lk = np.ascontiguousarray(lookup, dtype=np.int64)
    cdef const int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t a = u.shape[0], b = v.shape[0], n = u.shape[1]
    cdef Py_ssize_t i, j, k
    cdef int64_t acc
    # weight of each (u_i, v_i) symbol pair, flattened as u*q + v
    wl_arr = np.ascontiguousarray(np.asarray(weights, dtype=np.int64)[np.asarray(lookup, dtype=np.int64)])
    cdef const int64_t[::1] wl = wl_arr
    out = np.empty(a * b, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef const int64_t* urow
    cdef const int64_t* vrow
    with nogil:
        for i in range(a):
            urow = &u[i, 0] if n > 0 else NULL
            for j in range(b):
                vrow = &v[j, 0] if n > 0 else NULL
                acc = 0
                for k in range(n):
                    acc += wl[urow[k] * q + vrow[k]]
                o[i * b + j] = acc
    return out


def poly_mul(list keys_a, list coefs_a, list keys_b, list coefs_b):
    cdef dict out = {}
    cdef Py_ssize_t i, j, na = len(keys_a), nb = len(keys_b)
    cdef object ka, ca, kb, cb, k, prev
    for j in range(nb):
        kb = keys_b[j]
        cb = coefs_b[j]
        for i in range(na):
            k = keys_a[i] + kb
            prev = out.get(k)
            if prev is None:
                out[k] = coefs_a[i] * cb
            else:
                out[k] = prev + coefs_a[i] * cb
    return {k: c for k, c in out.items() if c}
