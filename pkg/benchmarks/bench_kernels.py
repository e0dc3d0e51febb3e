"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--points N] [--repeat R]

Reports the 9x9 Jacobi eigensolve and the batched negativity pipeline
(amplitudes -> reduced state -> partial transpose -> eigenvalues).
"""
import argparse
import sys
import timeit

import numpy as np

from kerrjc import _kernels
from kerrjc.entanglement import JACOBI_MAX_SWEEPS, JACOBI_TOL, mode_density, partial_transpose
from kerrjc.model import ModelParams, amplitudes


def _inputs(points, seed):
    rng = np.random.default_rng(seed)
    return (rng.integers(0, 101, points), rng.integers(0, 101, points), rng.uniform(0, np.pi, points),
            rng.uniform(0, 5, points), rng.uniform(-20, 20, points), rng.uniform(0, 10, points))


def _pt_matrix():
    p = ModelParams(3, 5, 0.7, 1.3, 2.0)
    return partial_transpose(mode_density(amplitudes(p, 1.1), p.n1, p.n2)).dense()


def _best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if _kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled extension not available; timing the fallback only", file=sys.stderr)

    m = _pt_matrix()
    batch = _inputs(args.points, args.seed)
    results = {}
    for b in backends:
        jac = _best(lambda: _kernels.jacobi_eigenvalues(m, JACOBI_TOL, JACOBI_MAX_SWEEPS, backend=b),
                    args.repeat, 50 if b == "python" else 5000)
        pipe = _best(lambda: _kernels.negativity_batch(*batch, JACOBI_TOL, JACOBI_MAX_SWEEPS, backend=b),
                     args.repeat, 1) / args.points
        results[b] = (jac, pipe)

    print(f"{'kernel':<22}" + "".join(f"{b:>14}" for b in backends)
          + (f"{'speedup':>10}" if len(backends) == 2 else ""))
    for i, label in enumerate(("jacobi 9x9", "negativity per point")):
        row = [results[b][i] for b in backends]
        line = f"{label:<22}" + "".join(f"{x * 1e6:>11.2f} us" for x in row)
        if len(row) == 2:
            line += f"{row[0] / row[1]:>9.1f}x"
        print(line)

    if len(backends) == 2:
        e_py, c_py, _ = _kernels.negativity_batch(*batch, JACOBI_TOL, JACOBI_MAX_SWEEPS, backend="python")
        e_cy, c_cy, _ = _kernels.negativity_batch(*batch, JACOBI_TOL, JACOBI_MAX_SWEEPS, backend="cython")
        print(f"max |python - cython|: eigenvalue path {np.abs(e_py - e_cy).max():.2e}, "
              f"closed form {np.abs(c_py - c_cy).max():.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
