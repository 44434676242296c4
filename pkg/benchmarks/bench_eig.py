"""Benchmark the Jacobi eigensolver: jitted kernel vs pure-numpy fallback.

Both paths run the same source function (``_jacobi_eigh_impl``); the
jitted variant is the ``njit``-wrapped alias the package selects when
numba is importable and ``QUTRIT_TELEPORT_NO_NUMBA`` is unset. JIT
compilation time is excluded by a warm-up solve per size. LAPACK
(``np.linalg.eigh``) is timed alongside as a reference point.

Usage:
    python benchmarks/bench_eig.py [--sizes 3 9 27] [--batch 64] [--reps 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qutrit_teleport import _kernels
from qutrit_teleport.tensor import JACOBI_MAX_SWEEPS, JACOBI_TOL


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2.0


def time_batch(solve, mats, reps: int) -> float:
    """Best-of-``reps`` wall time per solve, in seconds."""
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        for a in mats:
            solve(a)
        best = min(best, time.perf_counter() - start)
    return best / len(mats)


def main() -> int:
    ap = argparse.ArgumentParser(
        description="time the jitted and pure-numpy Jacobi paths"
    )
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 9, 27],
                    help="matrix dimensions to benchmark")
    ap.add_argument("--batch", type=int, default=64,
                    help="matrices per timed batch")
    ap.add_argument("--reps", type=int, default=5,
                    help="repetitions; best one is reported")
    ap.add_argument("--seed", type=int, default=20260815)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)

    def pure(a):
        return _kernels._jacobi_eigh_impl(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)

    solvers = [("pure-numpy", pure)]
    if _kernels.NUMBA_ENABLED:
        def jitted(a):
            return _kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)

        solvers.append(("numba-jit", jitted))
    else:
        print("numba path unavailable (not importable or disabled by "
              "QUTRIT_TELEPORT_NO_NUMBA); timing fallback only")
    solvers.append(("lapack-ref", np.linalg.eigh))

    header = f"{'n':>4}  " + "".join(f"{name:>14}" for name, _ in solvers)
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        mats = [random_hermitian(n, rng) for _ in range(args.batch)]
        row = [f"{n:>4}  "]
        for _, solve in solvers:
            solve(mats[0])  # warm-up: triggers JIT compile, caches
            per_solve = time_batch(solve, mats, args.reps)
            row.append(f"{per_solve * 1e6:>12.1f}us")
        print("".join(row))

    # agreement spot check between the two kernel paths
    a = random_hermitian(27, rng)
    w_pure = np.sort(pure(a)[0])
    w_ref = np.sort(np.linalg.eigvalsh(a))
    dev = float(np.max(np.abs(w_pure - w_ref)))
    lines = [f"max |pure - lapack| eigenvalue deviation at n=27: {dev:.3e}"]
    if _kernels.NUMBA_ENABLED:
        w_jit = np.sort(_kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)[0])
        lines.append(
            f"max |jit - pure| eigenvalue deviation at n=27: "
            f"{float(np.max(np.abs(w_jit - w_pure))):.3e}"
        )
    print()
    print("\n".join(lines))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
