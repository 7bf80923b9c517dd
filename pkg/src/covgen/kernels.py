"""Backend selection for the mod-p kernels.

The compiled extension ``covgen._kernels`` is used when it imports; setting
``COVGEN_PURE_PYTHON=1`` forces the numpy fallback.  Both expose the same
four functions and must give identical results.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("COVGEN_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rref_modp = _impl.rref_modp
reduce_vector = _impl.reduce_vector
eval_terms = _impl.eval_terms
leibniz = _impl.leibniz

__all__ = ["BACKEND", "rref_modp", "reduce_vector", "eval_terms", "leibniz"]
