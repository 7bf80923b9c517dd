"""Exact and modular linear algebra over Q.

``rank_exact`` is the exact entry point.  It first works modulo word-size
primes; the modular rank is always a lower bound for the rational rank, and
the answer is certified by lifting a nullspace basis to Q (CRT + rational
reconstruction) and checking every vector against the rational matrix.  If
the certificate fails the matrix is reduced again by fraction-free (Bareiss)
elimination over the integers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Sequence

import numpy as np

from . import kernels
from .poly import Q, q_num_den

log = logging.getLogger(__name__)

PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
          2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
          2147483423, 2147483399, 2147483353, 2147483323, 2147483269,
          2147483249, 2147483237, 2147483179, 2147483171, 2147483137)

__all__ = [
    "PRIMES", "RankResult", "rank_exact", "rank_bareiss", "nullspace_bareiss",
    "rank_modp", "to_modp", "Echelon", "rational_reconstruction",
]


@dataclass
class RankResult:
    rank: int
    nullspace: list[list[Q]] | None
    method: str


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by its common denominator (row scaling keeps the kernel)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            _, d = q_num_den(Q(x))
            den = den * d // gcd(den, d)
        out.append([int(Q(x) * den) for x in row])
    return out


def to_modp(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> np.ndarray:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    A = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                A[i, j] = int(x) % p
    return A


def rank_modp(A: np.ndarray, p: int) -> int:
    work = np.ascontiguousarray(A, dtype=np.int64).copy()
    return len(kernels.rref_modp(work, p))


def rational_reconstruction(a: int, m: int) -> tuple[int, int] | None:
    """n/d = a (mod m) with |n|, d <= sqrt(m/2), or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return r1, s1


def _nullspace_modp(A: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """(pivot columns, basis rows of {x : A x = 0 mod p}) via RREF."""
    m, n = A.shape
    R = np.ascontiguousarray(A, dtype=np.int64).copy()
    pivots = kernels.rref_modp(R, p)
    free = [j for j in range(n) if j not in set(pivots)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for r, c in enumerate(pivots):
            N[k, c] = (-int(R[r, f])) % p
    return pivots, N


def _verify(rows: list[list[int]], vec: list[Q]) -> bool:
    nz = [(j, v) for j, v in enumerate(vec) if v]
    for row in rows:
        s = 0
        for j, v in nz:
            x = row[j]
            if x:
                s += x * v
        if s:
            return False
    return True


def rank_exact(rows: Sequence[Sequence], ncols: int | None = None,
               nullspace: bool = False, max_primes: int = 12) -> RankResult:
    """Exact rank of a rational matrix, with its right nullspace on demand.

    The nullspace (basis of {x : M x = 0}) is returned as rational vectors
    normalized to have a 1 in their free coordinate.
    """
    irows = _integer_rows(rows)
    if ncols is None:
        ncols = len(irows[0]) if irows else 0
    if not irows or ncols == 0:
        return RankResult(0, [[Q(int(i == j)) for j in range(ncols)] for i in range(ncols)]
                          if nullspace else None, "trivial")
    moduli = []
    residues = []
    pivots_ref = None
    rank_lb = 0
    for p in PRIMES[:max_primes]:
        A = to_modp(irows, p, ncols)
        pivots, N = _nullspace_modp(A, p)
        if len(pivots) > rank_lb:
            # a larger modular rank: earlier primes were unlucky, restart the lift
            rank_lb = len(pivots)
            moduli, residues, pivots_ref = [], [], pivots
        if pivots != pivots_ref:
            continue
        moduli.append(p)
        residues.append(N)
        vecs = _lift(moduli, residues)
        if vecs is not None and all(_verify(irows, v) for v in vecs):
            if len(vecs) + rank_lb == ncols:
                return RankResult(rank_lb, vecs if nullspace else None,
                                  f"modular+certificate({len(moduli)} primes)")
    log.info("modular certificate failed after %d primes; falling back to Bareiss", len(moduli))
    if nullspace:
        r, vecs = nullspace_bareiss(irows, ncols)
        return RankResult(r, vecs, "bareiss")
    return RankResult(rank_bareiss(irows), None, "bareiss")


def _lift(moduli: list[int], residues: list[np.ndarray]) -> list[list[Q]] | None:
    M = 1
    for p in moduli:
        M *= p
    shape = residues[0].shape
    out = []
    for k in range(shape[0]):
        vec = []
        for j in range(shape[1]):
            a = 0
            mod = 1
            for p, N in zip(moduli, residues):
                r = int(N[k, j])
                # incremental CRT
                t = ((r - a) * pow(mod, -1, p)) % p
                a += mod * t
                mod *= p
            rr = rational_reconstruction(a, M)
            if rr is None:
                return None
            vec.append(Q(rr[0], rr[1]))
        out.append(vec)
    return out


def rank_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        pv = pr[c]
        for i in range(rank + 1, m):
            row = A[i]
            f = row[c]
            if f:
                A[i] = [(pv * row[j] - f * pr[j]) // prev for j in range(n)]
            else:
                A[i] = [(pv * row[j]) // prev for j in range(n)]
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def nullspace_bareiss(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, list[list[Q]]]:
    """Rank and right nullspace via exact Gauss-Jordan over Q."""
    A = [[Q(x) for x in r] for r in rows]
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [j for j in range(ncols) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        vecs.append(v)
    return len(pivots), vecs


class Echelon:
    """Incrementally grown reduced basis of a subspace of F_p^n."""

    def __init__(self, n: int, p: int, capacity: int | None = None):
        self.n = n
        self.p = p
        cap = capacity if capacity is not None else n
        self.rows = np.zeros((max(cap, 1), n), dtype=np.int64)
        self.pivots = np.zeros(max(cap, 1), dtype=np.int64)
        self.size = 0

    @property
    def rank(self) -> int:
        return self.size

    def residual(self, v: np.ndarray) -> tuple[np.ndarray, int]:
        w = np.ascontiguousarray(v, dtype=np.int64).copy()
        lead = kernels.reduce_vector(self.rows, self.pivots, self.size, w, self.p)
        return w, lead

    def add(self, v: np.ndarray) -> bool:
        """Insert ``v``; return False if it already lies in the span."""
        w, lead = self.residual(v)
        if lead < 0:
            return False
        if self.size == self.rows.shape[0]:
            self.rows = np.vstack([self.rows, np.zeros_like(self.rows)])
            self.pivots = np.concatenate([self.pivots, np.zeros_like(self.pivots)])
        p = self.p
        w = (w * pow(int(w[lead]), -1, p)) % p
        # keep the basis reduced: clear the new pivot column from old rows
        if self.size:
            old = self.rows[:self.size]
            f = old[:, lead].copy()
            old -= (f[:, None] * w[None, :]) % p
            old %= p
        self.rows[self.size] = w
        self.pivots[self.size] = lead
        self.size += 1
        return True
