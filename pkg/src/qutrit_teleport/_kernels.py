"""Numerical kernels with optional numba acceleration.

The cyclic Jacobi eigensolver below is the only hot inner loop in the
package: QFIM evaluation, positivity checks and measurement validation
call it across whole parameter grids. The function body is plain numpy
that also compiles under numba's nopython mode, so the same source
serves as both the jitted kernel and the fallback.

Path selection: numba is used when importable, unless the environment
variable ``QUTRIT_TELEPORT_NO_NUMBA`` is set to a non-empty value other
than ``0``, which forces the pure-numpy path (used by the benchmark and
for debugging).
"""

from __future__ import annotations

import os

import numpy as np


def _jacobi_eigh_impl(a: np.ndarray, tol: float, max_sweeps: int):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each sweep visits every upper-triangle pivot (p, q) and applies a
    unitary plane rotation that zeroes it. The rotation is the real
    Jacobi rotation of Golub & Van Loan composed with a phase that makes
    the pivot real first. Iteration stops once the off-diagonal
    Frobenius norm drops below ``tol`` or after ``max_sweeps`` sweeps.

    Returns ``(eigenvalues, eigenvectors)`` unsorted, eigenvectors as
    columns. The caller is responsible for ordering.
    """
    n = a.shape[0]
    h = a.copy()
    v = np.eye(n, dtype=np.complex128)
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = h[p, q]
                off += x.real * x.real + x.imag * x.imag
        if np.sqrt(2.0 * off) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                hpq = h[p, q]
                r = abs(hpq)
                if r == 0.0:
                    continue
                phase = hpq / r
                tau = (h[q, q].real - h[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # 2x2 unitary J: columns mix (p, q); the conj(phase)
                # factors absorb arg(h[p, q]) so the rotated pivot is
                # exactly zero.
                jpp = c + 0.0j
                jpq = s + 0.0j
                jqp = -s * np.conj(phase)
                jqq = c * np.conj(phase)
                col_p = h[:, p].copy()
                col_q = h[:, q].copy()
                h[:, p] = col_p * jpp + col_q * jqp
                h[:, q] = col_p * jpq + col_q * jqq
                row_p = h[p, :].copy()
                row_q = h[q, :].copy()
                h[p, :] = np.conj(jpp) * row_p + np.conj(jqp) * row_q
                h[q, :] = np.conj(jpq) * row_p + np.conj(jqq) * row_q
                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = col_p * jpp + col_q * jqp
                v[:, q] = col_p * jpq + col_q * jqq
    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = h[i, i].real
    return w, v


def _want_numba() -> bool:
    flag = os.environ.get("QUTRIT_TELEPORT_NO_NUMBA", "")
    return flag in ("", "0")


NUMBA_ENABLED = False
jacobi_eigh = _jacobi_eigh_impl

if _want_numba():
    try:
        from numba import njit

        jacobi_eigh = njit(cache=True)(_jacobi_eigh_impl)
        NUMBA_ENABLED = True
    except ImportError:
        pass
