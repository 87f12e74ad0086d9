# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi kernel; mirror of _jacobi_py.jacobi_sweeps."""

from libc.math cimport fabs, sqrt


cdef double _off_norm(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef double off2 = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                off2 += a[i, j] * a[i, j]
    if off2 > 0.0:
        return sqrt(off2)
    return 0.0


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] v, double off_tol,
                  int max_sweeps, bint with_vectors):
    """Diagonalize the symmetric matrix a in place; see the Python twin."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweeps = 0
    cdef double off, apq, diff, tau, t, c, s, xp, xq
    with nogil:
        while True:
            off = _off_norm(a, n)
            if off <= off_tol or sweeps >= max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    diff = a[q, q] - a[p, p]
                    # when the pivot is negligible next to the diagonal gap
                    # the angle is apq/diff to machine precision; this branch
                    # also keeps tau*tau below overflow in the general formula
                    if fabs(diff) + 100.0 * fabs(apq) == fabs(diff):
                        t = apq / diff
                    else:
                        tau = diff / (2.0 * apq)
                        if tau >= 0.0:
                            t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                        else:
                            t = 1.0 / (tau - sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    for k in range(n):
                        xp = a[k, p]
                        xq = a[k, q]
                        a[k, p] = c * xp - s * xq
                        a[k, q] = s * xp + c * xq
                    for k in range(n):
                        xp = a[p, k]
                        xq = a[q, k]
                        a[p, k] = c * xp - s * xq
                        a[q, k] = s * xp + c * xq
                    if with_vectors:
                        for k in range(n):
                            xp = v[k, p]
                            xq = v[k, q]
                            v[k, p] = c * xp - s * xq
                            v[k, q] = s * xp + c * xq
            sweeps += 1
    return sweeps, off
