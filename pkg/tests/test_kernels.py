"""Both kernel backends must agree bit for bit."""

import numpy as np
import pytest

from covgen import _kernels_py, kernels

P = 2147483647

try:
    from covgen import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def _rand(rng, *shape):
    return rng.integers(0, P, size=shape, dtype=np.int64)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if compiled is not None:
        assert kernels.BACKEND == "cython"


@needs_ext
@pytest.mark.parametrize("seed", range(5))
def test_rref_parity(seed):
    rng = np.random.default_rng(seed)
    A = _rand(rng, 12, 15)
    A[5] = (A[1] * 3 + A[2]) % P
    A[:, 4] = 0
    a, b = A.copy(), A.copy()
    assert compiled.rref_modp(a, P) == _kernels_py.rref_modp(b, P)
    assert np.array_equal(a, b)


@needs_ext
@pytest.mark.parametrize("seed", range(5))
def test_reduce_vector_parity(seed):
    rng = np.random.default_rng(seed)
    A = _rand(rng, 6, 10)
    piv = _kernels_py.rref_modp(A, P)
    pivots = np.array(piv, dtype=np.int64)
    v = (A[0] * 5 + A[3] + (rng.integers(0, 2, 10) * 7)) % P
    v1, v2 = v.copy(), v.copy()
    assert compiled.reduce_vector(A, pivots, len(piv), v1, P) == \
        _kernels_py.reduce_vector(A, pivots, len(piv), v2, P)
    assert np.array_equal(v1, v2)


@needs_ext
def test_eval_terms_parity():
    rng = np.random.default_rng(1)
    T, V, E, M = 30, 5, 6, 17
    exps = rng.integers(0, E, size=(T, V), dtype=np.int64)
    coeffs = _rand(rng, T)
    base = _rand(rng, V, M)
    pows = np.ones((V, E, M), dtype=np.int64)
    for e in range(1, E):
        pows[:, e] = (pows[:, e - 1] * base) % P
    assert np.array_equal(compiled.eval_terms(exps, coeffs, pows, P),
                          _kernels_py.eval_terms(exps, coeffs, pows, P))


@needs_ext
def test_leibniz_parity():
    rng = np.random.default_rng(2)
    J, M = 9, 11
    u, w = _rand(rng, J, M), _rand(rng, J, M)
    binom = np.tril(_rand(rng, J, J))
    assert np.array_equal(compiled.leibniz(u, w, binom, P), _kernels_py.leibniz(u, w, binom, P))


def test_search_identical_under_both_backends():
    import os
    import subprocess
    import sys
    code = ("import sys; from covgen.search import run_search; from covgen.kernels import BACKEND;"
            " sys.stderr.write(BACKEND); sys.stdout.write(run_search(8, 6, 'paper').dumps())")
    outs = {}
    for pure in ("", "1"):
        env = {k: v for k, v in os.environ.items() if k != "COVGEN_PURE_PYTHON"}
        if pure:
            env["COVGEN_PURE_PYTHON"] = pure
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        outs[res.stderr.strip()] = res.stdout
    assert "python" in outs
    assert len(set(outs.values())) == 1
