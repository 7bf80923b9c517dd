import random

import numpy as np
from hypothesis import given, settings, strategies as st

from covgen.linalg import (PRIMES, Echelon, nullspace_bareiss, rank_bareiss, rank_exact,
                           rank_modp, rational_reconstruction, to_modp)
from covgen.poly import Q


def test_trivial_ranks():
    assert rank_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).rank == 3
    assert rank_exact([[0, 0], [0, 0]]).rank == 0


def test_rational_entries_and_nullspace():
    rows = [[Q(1, 2), Q(1, 3), 1], [1, Q(2, 3), 2]]
    res = rank_exact(rows, nullspace=True)
    assert res.rank == 1
    assert len(res.nullspace) == 2
    for v in res.nullspace:
        for row in rows:
            assert sum(Q(a) * b for a, b in zip(row, v)) == 0


def test_large_entries_force_several_primes():
    rng = random.Random(3)
    base = [[rng.randint(-10**30, 10**30) for _ in range(6)] for _ in range(4)]
    # two dependent rows with big coefficients
    rows = base + [[a * 7 + b * (10**25) for a, b in zip(base[0], base[1])]]
    res = rank_exact(rows, nullspace=True)
    assert res.rank == 4
    assert res.rank == rank_bareiss(rows)


def test_rational_reconstruction():
    m = PRIMES[0] * PRIMES[1]
    a = (-5 * pow(7, -1, m)) % m
    assert rational_reconstruction(a, m) == (-5, 7)


mats = st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(mats)
def test_modular_matches_bareiss(rows):
    r = rank_bareiss(rows)
    res = rank_exact(rows, nullspace=True)
    assert res.rank == r
    r2, ns = nullspace_bareiss(rows, 4)
    assert r2 == r and len(ns) == len(res.nullspace) == 4 - r


@settings(max_examples=40, deadline=None)
@given(mats)
def test_echelon_rank(rows):
    p = PRIMES[0]
    E = Echelon(4, p, capacity=1)
    for row in rows:
        E.add(np.array([x % p for x in row], dtype=np.int64))
    assert E.rank == rank_modp(to_modp(rows, p, 4), p)
    for row in rows:
        assert not E.add(np.array([x % p for x in row], dtype=np.int64))


def test_echelon_rejects_span_member():
    p = 101
    E = Echelon(3, p)
    assert E.add(np.array([1, 2, 3]))
    assert E.add(np.array([0, 1, 1]))
    assert not E.add(np.array([2, 5, 7]))
    assert E.add(np.array([2, 5, 8]))
    assert E.rank == 3
