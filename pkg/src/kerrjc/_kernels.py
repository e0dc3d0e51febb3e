"""Select the hot kernels: compiled extension if importable, else pure Python.

Set ``KERRJC_PURE_PYTHON=1`` to force the fallback.
"""
import os

import numpy as np

from . import _jacobi_py

_ext = None
if os.environ.get("KERRJC_PURE_PYTHON") != "1":
    try:
        from . import _jacobi_ext as _ext
    except ImportError:
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def _require_ext():
    if _ext is None:
        raise ImportError("compiled kernel kerrjc._jacobi_ext is not built")
    return _ext


def jacobi_eigenvalues(a, tol, max_sweeps, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        return _require_ext().jacobi_eigenvalues(np.ascontiguousarray(a, dtype=complex), tol, max_sweeps)
    if backend == "python":
        return _jacobi_py.jacobi_eigenvalues(np.asarray(a, dtype=complex).tolist(), tol, max_sweeps)
    raise ValueError(f"unknown backend {backend!r}")


def negativity_batch(n1, n2, theta, eta, zeta, t, tol, max_sweeps, backend=None):
    """Eigenvalue-path and |ad|+|bc| negativity of the closed form at many points.

    Inputs are equal-length sequences and are assumed already validated.
    Returns ``(eigen_path, closed_form, failed_index)`` with
    ``failed_index == -1`` on success.
    """
    backend = backend or BACKEND
    if backend == "cython":
        return _require_ext().negativity_batch(n1, n2, theta, eta, zeta, t, tol, max_sweeps)
    if backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    from .entanglement import ConvergenceError, mode_density, negativity
    from .model import ModelParams, amplitudes

    m = len(n1)
    eig, closed = np.empty(m), np.empty(m)
    for i in range(m):
        amps = amplitudes(ModelParams(int(n1[i]), int(n2[i]), float(theta[i]), float(eta[i]),
                                      float(zeta[i])), float(t[i]))
        try:
            res = negativity(mode_density(amps), backend="python")
        except ConvergenceError:
            return eig, closed, i
        eig[i], closed[i] = res.value, res.closed_form_value
    return eig, closed, -1
