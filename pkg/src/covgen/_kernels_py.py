"""Numpy implementations of the mod-p kernels (used when the extension is absent)."""

from __future__ import annotations

import numpy as np


def rref_modp(A: np.ndarray, p: int) -> list[int]:
    m, n = A.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows, c:] = (A[rows, c:] - (col[rows, None] * A[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return pivots


def reduce_vector(basis: np.ndarray, pivots: np.ndarray, nb: int, v: np.ndarray, p: int) -> int:
    for k in range(nb):
        f = int(v[pivots[k]])
        if f:
            v[:] = (v - (f * basis[k]) % p) % p
    nz = np.nonzero(v)[0]
    return int(nz[0]) if nz.size else -1


def eval_terms(exps: np.ndarray, coeffs: np.ndarray, pows: np.ndarray, p: int) -> np.ndarray:
    T, V = exps.shape
    M = pows.shape[2]
    if T == 0:
        return np.zeros(M, dtype=np.int64)
    acc = np.repeat(coeffs[:, None], M, axis=1)
    for b in range(V):
        col = exps[:, b]
        if not col.any():
            continue
        acc = (acc * pows[b, col, :]) % p
    # T entries below 2**31 each: the int64 sum cannot overflow
    return acc.sum(axis=0, dtype=np.int64) % p


def leibniz(u: np.ndarray, w: np.ndarray, binom: np.ndarray, p: int) -> np.ndarray:
    J, M = u.shape
    out = np.zeros((J, M), dtype=np.int64)
    for j in range(J):
        for a in range(j + 1):
            out[j] = (out[j] + int(binom[j, a]) * ((u[a] * w[j - a]) % p)) % p
    return out
