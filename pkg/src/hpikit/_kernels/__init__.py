"""Numerical hot-path kernels with a compiled core and a pure-NumPy fallback.

The compiled extension (``hpikit._kernels._ckernels``, built from Cython) is
preferred when importable; otherwise the pure backend is used transparently.
Set ``HPIKIT_PURE_PYTHON=1`` to force the pure backend, or call
:func:`use_backend` at runtime (used by the tests and the benchmark).

Both backends expose the same four functions with identical semantics:

    cart_best_split(X, y, rows, features, min_leaf) -> (feature, threshold, score)
    tree_traverse(feature, threshold, left, right, value, X) -> predictions
    svr_smo(K, y, C, eps, tol, max_iter) -> (beta, b, iterations, gap)
    enet_cd(X, y, l1, l2, tol, max_iter) -> (beta, iterations, converged)
"""

import os

from . import _pykernels

try:
    from . import _ckernels

    _HAVE_COMPILED = True
except ImportError:
    _ckernels = None
    _HAVE_COMPILED = False

_EXPORTED = ("cart_best_split", "tree_traverse", "svr_smo", "enet_cd")

backend_name = None


def available_backends():
    names = ["pure"]
    if _HAVE_COMPILED:
        names.insert(0, "compiled")
    return names


def use_backend(name):
    """Bind the module-level kernel functions to the named backend."""
    global backend_name
    if name == "compiled":
        if not _HAVE_COMPILED:
            raise RuntimeError("compiled kernel extension is not available")
        source = _ckernels
    elif name == "pure":
        source = _pykernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    for fn in _EXPORTED:
        globals()[fn] = getattr(source, fn)
    backend_name = name


_forced_pure = os.environ.get("HPIKIT_PURE_PYTHON", "").strip() not in ("", "0")
use_backend("compiled" if (_HAVE_COMPILED and not _forced_pure) else "pure")
