import numpy as np
import pytest

from covgen.covariants import basic_form, kappa_inv, semitransvectant, transvectant
from covgen.evaluation import PointSet
from covgen.linalg import PRIMES


def _full(pts, cov):
    return np.array([pts.eval_x(c) for c in cov.coeffs], dtype=np.int64)


@pytest.mark.parametrize("r", [0, 1, 2, 3, 5])
def test_numeric_transvectant_matches_exact(r):
    d = 6
    pts = PointSet(d, PRIMES[0], 7, seed=11)
    t = basic_form(d)
    dv1 = semitransvectant(t, t, 2)
    F, G = kappa_inv(t), kappa_inv(dv1)
    exact = transvectant(F, G, r)
    num = pts.transvectant(_full(pts, F), _full(pts, G), r)
    assert np.array_equal(num, _full(pts, exact))
    lead = pts.leading(_full(pts, F), _full(pts, G), F.order, G.order, r)
    assert np.array_equal(lead, num[0])


def test_products_and_basic_form():
    d = 5
    pts = PointSet(d, PRIMES[1], 5, seed=3)
    F = kappa_inv(basic_form(d))
    A = _full(pts, F)
    assert np.array_equal(A, pts.basic_form())
    sq = pts.mul(A, A)
    assert np.array_equal(sq, pts.power(A, 2))
    assert sq.shape[0] == 2 * d + 1
    # a truncated product keeps the leading coefficients
    assert np.array_equal(pts.mul(A, A, trunc=3), sq[:3])


def test_points_are_deterministic():
    a = PointSet(8, PRIMES[0], 4, seed=5)
    b = PointSet(8, PRIMES[0], 4, seed=5)
    assert np.array_equal(a.basic_form(), b.basic_form())
    assert np.all(a.basic_form()[0] != 0)
