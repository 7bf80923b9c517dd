import itertools

import pytest

from covgen.enumerative import (PipelineInconsistency, UniPoly, delta, dim_covariants,
                                gaussian_binomial, poincare_series, poincare_sigma)
from covgen.linalg import rank_exact
from covgen.poly import X, Poly
from covgen.weitzenbock import apply, d1


def test_gaussian_binomial_examples():
    assert gaussian_binomial(1, 1) == UniPoly.of([1, 1])
    assert gaussian_binomial(8, 2)[8] == 5
    assert gaussian_binomial(8, 3)[12] == 13


@pytest.mark.parametrize("d,i", [(d, i) for d in range(1, 9) for i in range(1, 7)])
def test_gaussian_binomial_palindromic(d, i):
    c = gaussian_binomial(d, i).coeffs
    assert c == c[::-1]
    assert len(c) == d * i + 1
    if d * i % 2 == 0:
        assert c[d * i // 2] == dim_covariants(d, i)


def test_dim_covariants_printed_values():
    assert [dim_covariants(8, i) for i in (4, 5, 6, 7)] == [33, 73, 151, 289]
    assert dim_covariants(2, 2) == 2


def _partitions_brute(n, parts, largest):
    count = 0
    for k in range(parts + 1):
        for combo in itertools.combinations_with_replacement(range(1, largest + 1), k):
            if sum(combo) == n:
                count += 1
    return count


@pytest.mark.parametrize("d", range(1, 11))
def test_partition_oracle(d):
    for i in range(1, 13):
        if d * i > 60:
            # enumeration gets slow; the recursion is checked on the smaller cases
            continue
        assert dim_covariants(d, i) == _partitions_brute(d * i // 2, i, d), (d, i)


def _d1_nullity(d, i):
    xs = X(d)
    mons = list(itertools.combinations_with_replacement(range(d + 1), i))
    polys = []
    for m in mons:
        p = Poly.constant(xs, 1)
        for v in m:
            p = p * xs.var(xs.names[v])
        polys.append(p)
    D = d1(d)
    images = [apply(D, p) for p in polys]
    keys = sorted({k for q in images for k in q.terms})
    col = {k: j for j, k in enumerate(keys)}
    rows = [[0] * len(polys) for _ in keys]
    for j, q in enumerate(images):
        for k, c in q.terms.items():
            rows[col[k]][j] = c
    rank = rank_exact(rows, ncols=len(polys)).rank if rows else 0
    return len(polys) - rank


@pytest.mark.parametrize("d,i", [(d, i) for d in range(1, 5) for i in range(1, 6)])
def test_kernel_oracle(d, i):
    assert dim_covariants(d, i) == _d1_nullity(d, i)


def test_poincare_sigma_examples():
    assert poincare_sigma({1: 1}, 2) == 1
    assert poincare_sigma({1: 1, 2: 4, 3: 8, 4: 10}, 5) == 65
    assert poincare_sigma({}, 1) == 0
    with pytest.raises(IndexError):
        poincare_series({1: 1}, 3)[4]


def test_delta_rows():
    assert delta(5, 73, 65, 3).delta == 11
    assert delta(6, 151, 172, 30).delta == 9
    assert delta(12, 3788, 14520, 10733).delta == 1
    with pytest.raises(PipelineInconsistency):
        delta(3, 1, 5, 0)
