"""Dense complex linear algebra for small operator matrices.

Everything in the simulation pipeline lives in dimension 3, 9 or 27,
so the routines here are thin, validated wrappers over numpy dense
operations plus a self-contained Hermitian eigensolver. The solver is
a cyclic Jacobi iteration (see ``_kernels``) rather than a LAPACK call,
which keeps the spectral route independent of ``np.linalg`` so the two
can be cross-checked in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_eigh

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
HERMITICITY_TOL = 1e-10


class DimensionMismatch(ValueError):
    """Operand shapes are incompatible for the requested operation."""


class NotHermitian(ValueError):
    """Matrix fails the Hermiticity check; carries the violation size."""

    def __init__(self, violation: float, context: str = "matrix"):
        self.violation = float(violation)
        super().__init__(
            f"{context} is not Hermitian: max |a - a^dag| = {self.violation:.3e}"
        )


@dataclass(frozen=True)
class Eigensystem:
    """Spectral decomposition: ``values[k]`` pairs with column ``vectors[:, k]``.

    Eigenvalues are sorted in descending order and eigenvector columns
    are orthonormal.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(w) V^dag``; matches the input within 1e-10."""
        return (self.vectors * self.values) @ self.vectors.conj().T


def _as_square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    return a


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two equal-sized square matrices."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise DimensionMismatch(
            f"operand sizes differ: {a.shape[0]} vs {b.shape[0]}"
        )
    return a @ b


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor on the slow (most significant) index."""
    return np.kron(
        np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    )


def partial_trace(
    rho: np.ndarray, dims: list[int], keep: set[int] | list[int]
) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` gives the local dimension of each subsystem in tensor
    order; kept subsystems retain their relative order. The result has
    the same trace as the input.
    """
    rho = _as_square(rho, "rho")
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if total != rho.shape[0]:
        raise DimensionMismatch(
            f"prod(dims) = {total} does not match matrix size {rho.shape[0]}"
        )
    kept = sorted(set(int(k) for k in keep))
    if not kept:
        raise ValueError("keep must name at least one subsystem")
    if kept[0] < 0 or kept[-1] >= len(dims):
        raise ValueError(f"keep indices out of range for {len(dims)} subsystems")
    n = len(dims)
    t = rho.reshape(dims + dims)
    traced = [i for i in range(n) if i not in kept]
    for removed, ax in enumerate(traced):
        a = ax - removed
        half = t.ndim // 2
        t = np.trace(t, axis1=a, axis2=a + half)
    size = int(np.prod([dims[i] for i in kept]))
    return t.reshape(size, size)


def hermitian_eig(a: np.ndarray) -> Eigensystem:
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi.

    Raises :class:`NotHermitian` when ``max |a - a^dag|`` exceeds 1e-10;
    smaller skews are symmetrized away before solving.
    """
    a = _as_square(a)
    violation = float(np.max(np.abs(a - a.conj().T)))
    if violation > HERMITICITY_TOL:
        raise NotHermitian(violation)
    h = np.ascontiguousarray((a + a.conj().T) / 2.0)
    w, v = jacobi_eigh(h, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    order = np.argsort(-w, kind="stable")
    return Eigensystem(values=w[order], vectors=v[:, order])
