# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels.

Every array is int64 with entries in [0, p) and p < 2**31, so a product of
two entries fits in a signed 64-bit integer.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p) nogil:
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(cnp.int64_t[:, ::1] A, i64 p):
    """Reduce ``A`` in place to reduced row echelon form; return pivot columns."""
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, v
    pivots = []
    with nogil:
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(n):
                    v = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = v
            inv = _inv(A[r, c], p)
            for j in range(c, n):
                A[r, j] = (A[r, j] * inv) % p
            for i in range(m):
                if i == r:
                    continue
                f = A[i, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    if A[r, j] != 0:
                        v = A[i, j] - (f * A[r, j]) % p
                        if v < 0:
                            v += p
                        A[i, j] = v
            with gil:
                pivots.append(c)
            r += 1
    return pivots


def reduce_vector(cnp.int64_t[:, ::1] basis, cnp.int64_t[::1] pivots, Py_ssize_t nb,
                  cnp.int64_t[::1] v, i64 p):
    """Subtract the first ``nb`` rows of a reduced basis from ``v`` in place.

    Returns the first column where the residual is nonzero, or -1.
    """
    cdef Py_ssize_t k, j, n = v.shape[0], first = -1
    cdef i64 f, x
    with nogil:
        for k in range(nb):
            f = v[pivots[k]]
            if f == 0:
                continue
            for j in range(n):
                if basis[k, j] != 0:
                    x = v[j] - (f * basis[k, j]) % p
                    if x < 0:
                        x += p
                    v[j] = x
        for j in range(n):
            if v[j] != 0:
                first = j
                break
    return first


def eval_terms(cnp.int64_t[:, ::1] exps, cnp.int64_t[::1] coeffs,
               cnp.int64_t[:, :, ::1] pows, i64 p):
    """Sum of coeff * prod_v pows[v, e_v, :] over terms, mod p."""
    cdef Py_ssize_t T = exps.shape[0], V = exps.shape[1], M = pows.shape[2]
    cdef Py_ssize_t a, b, m
    cdef i64 e
    out_arr = np.zeros(M, dtype=np.int64)
    tmp_arr = np.empty(M, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef cnp.int64_t[::1] tmp = tmp_arr
    with nogil:
        for a in range(T):
            for m in range(M):
                tmp[m] = coeffs[a]
            for b in range(V):
                e = exps[a, b]
                if e == 0:
                    continue
                for m in range(M):
                    tmp[m] = (tmp[m] * pows[b, e, m]) % p
            for m in range(M):
                out[m] = (out[m] + tmp[m]) % p
    return out_arr


def leibniz(cnp.int64_t[:, ::1] u, cnp.int64_t[:, ::1] w, cnp.int64_t[:, ::1] binom, i64 p):
    """Chain of a product: out[j] = sum_a C(j, a) u[a] w[j-a] (mod p)."""
    cdef Py_ssize_t J = u.shape[0], M = u.shape[1]
    cdef Py_ssize_t j, a, m
    cdef i64 c, x
    out_arr = np.zeros((J, M), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    with nogil:
        for j in range(J):
            for a in range(j + 1):
                c = binom[j, a]
                for m in range(M):
                    x = (u[a, m] * w[j - a, m]) % p
                    out[j, m] = (out[j, m] + c * x) % p
    return out_arr
