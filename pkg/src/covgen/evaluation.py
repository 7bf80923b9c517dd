"""Covariants evaluated modulo a prime at random points of X(d).

A covariant of order m is carried as its plain coefficient sequence
``c[0..m]`` (an ``(m+1, M)`` int64 array) evaluated at ``M`` points.  Products
of covariants are convolutions of these sequences and transvectants follow
the bidifferential formula applied coefficientwise, so no symbolic D-chain is
ever needed on this path.  Evaluation is a ring homomorphism, hence a rank
found here is a lower bound for the rank over Q.
"""

from __future__ import annotations

from math import comb, factorial

import numpy as np

from . import kernels
from .poly import Poly, ZForm, q_num_den, unpack
from .weitzenbock import cayley_z

__all__ = ["PointSet", "poly_arrays"]


def poly_arrays(p: Poly, prime: int) -> tuple[np.ndarray, np.ndarray, int]:
    """(exponent matrix, coefficients mod prime, max exponent) of a Poly."""
    n = p.varset.nvars
    T = len(p.terms)
    exps = np.zeros((T, n), dtype=np.int64)
    coeffs = np.zeros(T, dtype=np.int64)
    for row, (k, c) in enumerate(sorted(p.terms.items())):
        exps[row] = unpack(k, n)
        num, den = q_num_den(c)
        coeffs[row] = (num % prime) * pow(den, -1, prime) % prime
    emax = int(exps.max()) if T else 0
    return exps, coeffs, emax


def _falling(a: int, i: int) -> int:
    out = 1
    for j in range(i):
        out *= a - j
    return out


class PointSet:
    """``M`` random points of X(d) over F_p, with t invertible at each."""

    def __init__(self, d: int, prime: int, M: int, seed: int):
        self.d = d
        self.p = prime
        self.M = M
        self.seed = seed
        rng = np.random.default_rng([seed, prime, d, M])
        x = rng.integers(0, prime, size=(d + 1, M), dtype=np.int64)
        x[0] = rng.integers(1, prime, size=M, dtype=np.int64)
        self.x = x
        self._z = None
        self._tinv = np.array([pow(int(v), -1, prime) for v in x[0]], dtype=np.int64)
        self._ones = np.tril(np.ones((d + 1, d + 1), dtype=np.int64))

    # -- point data -----------------------------------------------------------------
    def eval_poly(self, poly: Poly, values: np.ndarray) -> np.ndarray:
        exps, coeffs, emax = poly_arrays(poly, self.p)
        return self._eval_arrays(exps, coeffs, emax, values)

    def _eval_arrays(self, exps, coeffs, emax, values) -> np.ndarray:
        V = values.shape[0]
        pows = np.ones((V, emax + 1, self.M), dtype=np.int64)
        for e in range(1, emax + 1):
            pows[:, e] = (pows[:, e - 1] * values) % self.p
        return kernels.eval_terms(exps, coeffs, pows, self.p)

    @property
    def z(self) -> np.ndarray:
        """Values of (t, z2..zd) at the points."""
        if self._z is None:
            rows = [self.x[0]]
            for i in range(2, self.d + 1):
                rows.append(self.eval_poly(cayley_z(self.d, i), self.x))
            self._z = np.array(rows, dtype=np.int64)
        return self._z

    def eval_x(self, poly: Poly) -> np.ndarray:
        return self.eval_poly(poly, self.x)

    def eval_zform(self, f: ZForm) -> np.ndarray:
        if f.varset.kind != "Z":
            raise ValueError("eval_zform expects a Z(d) form")
        num = self.eval_poly(f.numerator, self.z)
        s = f.tpow
        base = self._tinv if s > 0 else self.x[0]
        for _ in range(abs(s)):
            num = (num * base) % self.p
        return num

    # -- covariant arithmetic -------------------------------------------------------
    def basic_form(self) -> np.ndarray:
        d, p = self.d, self.p
        c = np.array([comb(d, a) % p for a in range(d + 1)], dtype=np.int64)
        return (c[:, None] * self.x) % p

    def mul(self, A: np.ndarray, B: np.ndarray, trunc: int | None = None) -> np.ndarray:
        """Coefficient sequence of a product, optionally truncated to ``trunc`` rows."""
        p = self.p
        n = A.shape[0] + B.shape[0] - 1
        if trunc is not None:
            n = min(n, trunc)
        if trunc is not None and n <= self.d + 1 and A.shape[0] >= n and B.shape[0] >= n:
            return kernels.leibniz(np.ascontiguousarray(A[:n]), np.ascontiguousarray(B[:n]),
                                   np.ascontiguousarray(self._ones[:n, :n]), p)
        out = np.zeros((n, self.M), dtype=np.int64)
        for a in range(min(A.shape[0], n)):
            hi = min(B.shape[0], n - a)
            out[a:a + hi] = (out[a:a + hi] + (A[a] * B[:hi]) % p) % p
        return out

    def power(self, A: np.ndarray, e: int, trunc: int | None = None) -> np.ndarray:
        out = A if trunc is None else A[:trunc]
        for _ in range(e - 1):
            out = self.mul(out, A, trunc)
        return out

    def transvectant(self, A: np.ndarray, B: np.ndarray, r: int) -> np.ndarray:
        """Full (A, B)^r on coefficient sequences (orders from the shapes)."""
        p = self.p
        m, k = A.shape[0] - 1, B.shape[0] - 1
        n = m + k - 2 * r
        out = np.zeros((n + 1, self.M), dtype=np.int64)
        for i in range(r + 1):
            j = r - i
            fa = np.array([_falling(m - a, j) * _falling(a, i) % p for a in range(i, m - j + 1)],
                          dtype=np.int64)
            fb = np.array([_falling(k - b, i) * _falling(b, j) % p for b in range(j, k - i + 1)],
                          dtype=np.int64)
            FA = (fa[:, None] * A[i:m - j + 1]) % p
            GB = (fb[:, None] * B[j:k - i + 1]) % p
            s = ((-1) ** i * comb(r, i)) % p
            prod = self.mul(FA, GB)
            out = (out + s * prod) % p
        return out

    def leading(self, A: np.ndarray, B: np.ndarray, m: int, k: int, r: int) -> np.ndarray:
        """Leading coefficient of (A, B)^r from the first r+1 rows of each sequence."""
        p = self.p
        acc = np.zeros(self.M, dtype=np.int64)
        for i in range(r + 1):
            j = r - i
            if i > m or j > k:
                continue
            s = (-1) ** i * comb(r, i) * _falling(m - i, j) * factorial(i) \
                * _falling(k - j, i) * factorial(j)
            s %= p
            if s:
                acc = (acc + s * ((A[i] * B[j]) % p)) % p
        return acc
