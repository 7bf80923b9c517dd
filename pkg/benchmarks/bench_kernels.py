"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel is timed on identical inputs in both backends and the outputs are
checked for equality.  ``--end-to-end`` also times a d = 8 search to degree 9
in a subprocess per backend (COVGEN_PURE_PYTHON selects the fallback).
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from covgen import _kernels_py

try:
    from covgen import _kernels as compiled
except ImportError:
    sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

P = 2147483647


def _inputs(seed=0):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, P, size=(160, 200), dtype=np.int64)
    A[80:] = (A[:80] * 3 + A[1:81]) % P          # rank deficient
    basis = A[:60].copy()
    piv = _kernels_py.rref_modp(basis, P)
    v = rng.integers(0, P, size=200, dtype=np.int64)
    exps = rng.integers(0, 6, size=(400, 9), dtype=np.int64)
    coeffs = rng.integers(0, P, size=400, dtype=np.int64)
    base = rng.integers(0, P, size=(9, 300), dtype=np.int64)
    pows = np.ones((9, 6, 300), dtype=np.int64)
    for e in range(1, 6):
        pows[:, e] = (pows[:, e - 1] * base) % P
    u = rng.integers(0, P, size=(9, 300), dtype=np.int64)
    w = rng.integers(0, P, size=(9, 300), dtype=np.int64)
    binom = np.tril(rng.integers(0, P, size=(9, 9), dtype=np.int64))
    return {
        "rref_modp 160x200": lambda k: k.rref_modp(A.copy(), P),
        "reduce_vector 60 rows": lambda k: k.reduce_vector(basis, np.array(piv, dtype=np.int64),
                                                          len(piv), v.copy(), P),
        "eval_terms 400 terms x 300 pts": lambda k: k.eval_terms(exps, coeffs, pows, P),
        "leibniz 9 x 300": lambda k: k.leibniz(u, w, binom, P),
    }


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def run_kernels(repeat: int):
    print(f"{'kernel':34s} {'cython ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fn in _inputs().items():
        if not _same(fn(compiled), fn(_kernels_py)):
            raise SystemExit(f"{name}: backends disagree")
        tc = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=repeat))
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=repeat))
        print(f"{name:34s} {tc * 1e3:10.2f} {tp * 1e3:10.2f} {tp / tc:8.1f}x")


def run_end_to_end():
    code = ("import time; from covgen.search import run_search, SearchConfig; "
            "from covgen.kernels import BACKEND; t = time.perf_counter(); "
            "s = run_search(8, 9, 'generic', SearchConfig(zforms=False)); "
            "print(BACKEND, round(time.perf_counter() - t, 2), len(s.generators))")
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("COVGEN_PURE_PYTHON", None)
        if pure:
            env["COVGEN_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"search d=8 to degree 9, {out[0]:7s} backend: {out[1]}s ({out[2]} generators)")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    run_kernels(args.repeat)
    if args.end_to_end:
        run_end_to_end()


if __name__ == "__main__":
    main()
