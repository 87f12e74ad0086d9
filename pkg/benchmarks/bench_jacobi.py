#!/usr/bin/env python3
"""Time the compiled Jacobi kernel against the pure-Python twin.

Runs both backends on the same matrices (random symmetric ones plus the
Laplacians of a few zero-divisor graphs), reports median wall times and
the speedup, and cross-checks the eigenvalues of the two kernels against
each other and against numpy.linalg.eigvalsh.

Usage: python benchmarks/bench_jacobi.py [--sizes 20,60,120] [--repeats 5]
"""
import argparse
import statistics
import time

import numpy as np

from zdgspectra import eig
from zdgspectra._jacobi_py import jacobi_sweeps as py_sweeps
from zdgspectra.graph import build_zdg
from zdgspectra.rings import parse_ring_spec
from zdgspectra.spectra import laplacian_matrix

try:
    from zdgspectra._jacobi_cy import jacobi_sweeps as cy_sweeps
except ImportError:
    cy_sweeps = None

_DUMMY = np.zeros((1, 1))


def run_kernel(kernel, matrix):
    """Diagonalize a copy of `matrix` with the given sweep kernel."""
    a = np.array(matrix, dtype=np.float64)
    off_tol = eig.OFF_TOL_FACTOR * (1.0 + float(np.sqrt((a * a).sum())))
    kernel(a, _DUMMY, off_tol, eig.MAX_SWEEPS, False)
    return np.sort(np.diagonal(a))


def time_kernel(kernel, matrix, repeats):
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        run_kernel(kernel, matrix)
        times.append(time.perf_counter() - started)
    return statistics.median(times)


def workloads(sizes, seed):
    rng = np.random.default_rng(seed)
    for n in sizes:
        a = rng.standard_normal((n, n))
        yield f"random {n}x{n}", (a + a.T) / 2.0
    for spec in ("Zn(60)", "Zn(120)", "Zn(180)"):
        g = build_zdg(parse_ring_spec(spec))
        yield f"L({spec}) {g.order}x{g.order}", laplacian_matrix(g)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="20,60,120",
                        help="comma-separated random matrix sizes")
    parser.add_argument("--repeats", type=int, default=5,
                        help="runs per matrix; the median is reported")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s]

    if cy_sweeps is None:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"selected backend at import: {eig.BACKEND}")
    print()
    header = f"{'matrix':>18} {'python':>10} {'cython':>10} {'speedup':>8} {'dev(kernels)':>13} {'dev(numpy)':>11}"
    print(header)
    print("-" * len(header))

    worst_pair = 0.0
    worst_ref = 0.0
    for label, matrix in workloads(sizes, args.seed):
        t_py = time_kernel(py_sweeps, matrix, args.repeats)
        vals_py = run_kernel(py_sweeps, matrix)
        reference = np.linalg.eigvalsh(matrix)
        dev_ref = float(np.max(np.abs(vals_py - reference))) if len(reference) else 0.0
        if cy_sweeps is not None:
            t_cy = time_kernel(cy_sweeps, matrix, args.repeats)
            vals_cy = run_kernel(cy_sweeps, matrix)
            dev_pair = float(np.max(np.abs(vals_py - vals_cy))) if len(vals_py) else 0.0
            print(f"{label:>18} {t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x "
                  f"{dev_pair:>13.2e} {dev_ref:>11.2e}")
            worst_pair = max(worst_pair, dev_pair)
        else:
            print(f"{label:>18} {t_py:>9.4f}s {'-':>10} {'-':>8} {'-':>13} {dev_ref:>11.2e}")
        worst_ref = max(worst_ref, dev_ref)

    print()
    print(f"worst kernel-vs-kernel deviation: {worst_pair:.2e}")
    print(f"worst kernel-vs-numpy deviation:  {worst_ref:.2e}")
    budget = 1e-8
    if max(worst_pair, worst_ref) > budget:
        raise SystemExit(f"eigenvalue deviation above {budget:g}")
    print(f"agreement within {budget:g}: ok")


if __name__ == "__main__":
    main()
