"""Pure-Python cyclic Jacobi kernel.

Fallback used when the compiled extension is unavailable.  Same row-cyclic
rotation order, rotation formulas and convergence bookkeeping as the
Cython kernel, with numpy slice updates doing the row/column work, so both
backends agree to rounding.
"""
from __future__ import annotations

import math

import numpy as np


def _off_norm(a):
    d = np.diagonal(a)
    off2 = float((a * a).sum()) - float((d * d).sum())
    return math.sqrt(off2) if off2 > 0.0 else 0.0


def jacobi_sweeps(a, v, off_tol, max_sweeps, with_vectors):
    """Diagonalize the symmetric matrix a in place.

    Runs full row-cyclic sweeps of (p, q) rotations until the off-diagonal
    Frobenius norm drops to off_tol or max_sweeps is hit.  When
    with_vectors is set, v accumulates the rotations so its columns end up
    as eigenvectors.  Returns (sweeps_done, final_off_norm).
    """
    n = a.shape[0]
    sweeps = 0
    while True:
        off = _off_norm(a)
        if off <= off_tol or sweeps >= max_sweeps:
            return sweeps, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                # when the pivot is negligible next to the diagonal gap the
                # angle is apq/diff to machine precision; this branch also
                # keeps tau*tau below overflow in the general formula
                if abs(diff) + 100.0 * abs(apq) == abs(diff):
                    t = apq / diff
                else:
                    tau = diff / (2.0 * apq)
                    if tau >= 0.0:
                        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- J^T A J for the (p, q) rotation J
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                if with_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
        sweeps += 1
