"""Dimension counting for the graded algebra of covariants.

All arithmetic is exact integer arithmetic on coefficient lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

__all__ = [
    "UniPoly", "DimensionRow", "PipelineInconsistency", "gaussian_binomial",
    "dim_covariants", "partition_count", "monomial_count", "block_dim",
    "poincare_sigma", "poincare_series", "delta",
]


class PipelineInconsistency(RuntimeError):
    """Bookkeeping produced an impossible count (negative delta, ...)."""


@dataclass(frozen=True)
class UniPoly:
    """Polynomial (or power series truncated below ``T**trunc``) in T."""

    coeffs: tuple[int, ...]
    trunc: int | None = None

    @classmethod
    def of(cls, coeffs, trunc=None) -> "UniPoly":
        c = list(coeffs)
        if trunc is not None:
            c = c[:trunc]
        while c and c[-1] == 0:
            c.pop()
        return cls(tuple(c), trunc)

    def __getitem__(self, n: int) -> int:
        if self.trunc is not None and n >= self.trunc:
            raise IndexError(f"coefficient T^{n} is beyond the truncation order")
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        trunc = _min_trunc(self.trunc, other.trunc)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if trunc is not None:
            n = min(n, trunc)
        out = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a or i >= len(out):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= len(out):
                    break
                out[i + j] += a * b
        return UniPoly.of(out, trunc)

    def divexact(self, other: "UniPoly") -> "UniPoly":
        """Exact polynomial quotient; raises if the division leaves a remainder."""
        num = list(self.coeffs)
        den = other.coeffs
        if not den or den[0] == 0 and len(den) == 1:
            raise ZeroDivisionError("division by zero polynomial")
        dl = len(den) - 1
        lead = den[-1]
        q = [0] * max(len(num) - dl, 1)
        for k in range(len(num) - dl - 1, -1, -1):
            c, rem = divmod(num[k + dl], lead)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = c
            if c:
                for j, b in enumerate(den):
                    num[k + j] -= c * b
        if any(num):
            raise ArithmeticError("inexact polynomial division")
        return UniPoly.of(q)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _one_minus_power(k: int) -> UniPoly:
    c = [0] * (k + 1)
    c[0] = 1
    c[k] -= 1
    return UniPoly.of(c)


@lru_cache(maxsize=None)
def gaussian_binomial(d: int, i: int) -> UniPoly:
    """prod_{k=1..i} (1 - T^(d+k)) / (1 - T^k), i.e. [d+i choose i]_T."""
    if d < 1 or i < 1:
        raise ValueError("gaussian_binomial needs d >= 1 and i >= 1")
    num = UniPoly.of([1])
    den = UniPoly.of([1])
    for k in range(1, i + 1):
        num = num * _one_minus_power(d + k)
        den = den * _one_minus_power(k)
    return num.divexact(den)


def dim_covariants(d: int, i: int) -> int:
    """Number of independent covariants of degree i (all orders together).

    The central coefficient, T^(d*i//2), of the Gaussian binomial.
    """
    if d < 1 or i < 1:
        raise ValueError("dim_covariants needs d >= 1 and i >= 1")
    return gaussian_binomial(d, i)[d * i // 2]


@lru_cache(maxsize=None)
def partition_count(n: int, parts: int, largest: int) -> int:
    """Partitions of n into at most ``parts`` parts, each at most ``largest``."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    if parts == 0 or largest == 0:
        return 0
    return sum(partition_count(n - j * largest, parts - j, largest - 1)
               for j in range(min(parts, n // largest) + 1))


def monomial_count(d: int, i: int, w: int) -> int:
    """X-monomials of degree i and weight w in t, x1..xd."""
    return partition_count(w, i, d)


def block_dim(d: int, i: int, w: int) -> int:
    """Semi-invariants of degree i and weight w (order d*i - 2*w)."""
    if 2 * w > d * i or w < 0:
        return 0
    return partition_count(w, i, d) - partition_count(w - 1, i, d)


def poincare_series(deltas: Mapping[int, int], upto: int) -> UniPoly:
    """1 / prod_k (1 - T^k)^delta_k, truncated below T^(upto+1)."""
    c = [0] * (upto + 1)
    c[0] = 1
    for k in sorted(deltas):
        if k <= 0:
            raise ValueError("generator degrees must be positive")
        for _ in range(deltas[k]):
            for n in range(k, upto + 1):
                c[n] += c[n - k]
    return UniPoly.of(c, upto + 1)


def poincare_sigma(deltas: Mapping[int, int], i: int) -> int:
    """Coefficient of T^i in the series of the free algebra on degrees < i."""
    prior = {k: v for k, v in deltas.items() if k < i and v}
    return poincare_series(prior, i)[i]


@dataclass(frozen=True)
class DimensionRow:
    i: int
    dim_C: int
    sigma: int
    dim_S: int
    delta: int

    def to_json(self) -> dict:
        return {"i": self.i, "dim_C": self.dim_C, "sigma": self.sigma,
                "dim_S": self.dim_S, "delta": self.delta}

    @classmethod
    def from_json(cls, data: dict) -> "DimensionRow":
        return cls(int(data["i"]), int(data["dim_C"]), int(data["sigma"]),
                   int(data["dim_S"]), int(data["delta"]))


def delta(i: int, dim_C: int, sigma: int, dim_S: int) -> DimensionRow:
    """Assemble a row with delta = dim_C - (sigma - dim_S)."""
    value = dim_C - sigma + dim_S
    if value < 0 or dim_S < 0 or dim_S > sigma:
        raise PipelineInconsistency(
            f"degree {i}: dim C={dim_C}, sigma={sigma}, dim S={dim_S} gives delta={value}")
    return DimensionRow(i, dim_C, sigma, dim_S, value)
