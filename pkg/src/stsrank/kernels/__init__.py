"""Hot loops, compiled when the extension is built, pure Python otherwise.

Set ``STSRANK_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("STSRANK_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend

BACKEND = "cython" if compiled_backend is not None else "python"

gf2_rank = _impl.gf2_rank
stabilizer_scan = _impl.stabilizer_scan
factorization_images = _impl.factorization_images
latin_orthogonal_batch = _impl.latin_orthogonal_batch

__all__ = [
    "BACKEND",
    "compiled_backend",
    "python_backend",
    "gf2_rank",
    "stabilizer_scan",
    "factorization_images",
    "latin_orthogonal_batch",
]
