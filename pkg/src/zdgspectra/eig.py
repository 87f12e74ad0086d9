"""Symmetric eigensolver used everywhere in this package.

Cyclic Jacobi with a fixed row-cyclic rotation order.  Convergence is
declared when the off-diagonal Frobenius norm falls to
1e-10 * (1 + ||M||_F); at most 100 full sweeps are attempted and a
non-converged run raises with the residual attached.

The compiled kernel (zdgspectra._jacobi_cy) is picked at import time when
the extension was built; otherwise the pure-Python twin takes over with
identical semantics.
"""
from __future__ import annotations

import numpy as np

try:
    from ._jacobi_cy import jacobi_sweeps as _jacobi_sweeps

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    from ._jacobi_py import jacobi_sweeps as _jacobi_sweeps

    BACKEND = "python"

SYMMETRY_TOL = 1e-12
OFF_TOL_FACTOR = 1e-10
MAX_SWEEPS = 100

_EMPTY = np.zeros((1, 1))


class JacobiConvergenceError(RuntimeError):
    """Sweep budget exhausted before the off-diagonal norm reached target."""

    def __init__(self, residual, threshold, sweeps):
        self.residual = residual
        self.threshold = threshold
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi sweep did not converge: off-diagonal norm {residual:.3e} "
            f"above threshold {threshold:.3e} after {sweeps} sweeps"
        )


def _prepare(m):
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("a square matrix is required")
    if a.size and float(np.abs(a - a.T).max()) > SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric within {SYMMETRY_TOL:g}")
    return np.ascontiguousarray((a + a.T) / 2.0)


def _solve(m, with_vectors, max_sweeps):
    a = _prepare(m)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    off_tol = OFF_TOL_FACTOR * (1.0 + float(np.sqrt((a * a).sum())))
    v = np.eye(n) if with_vectors else _EMPTY
    sweeps, off = _jacobi_sweeps(a, v, off_tol, max_sweeps, with_vectors)
    if off > off_tol:
        raise JacobiConvergenceError(off, off_tol, sweeps)
    vals = np.diagonal(a).copy()
    order = np.argsort(vals, kind="stable")
    if with_vectors:
        return vals[order], v[:, order]
    return vals[order], None


def jacobi_eigen(m, max_sweeps: int = MAX_SWEEPS) -> list[float]:
    """Eigenvalues of a symmetric matrix, ascending, as a plain list."""
    vals, _ = _solve(m, False, max_sweeps)
    return [float(x) for x in vals]


def jacobi_eigen_system(m, max_sweeps: int = MAX_SWEEPS):
    """(eigenvalues, eigenvectors): ascending values, orthonormal columns."""
    vals, vecs = _solve(m, True, max_sweeps)
    return vals, vecs
