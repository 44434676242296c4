"""Two-parameter quantum Fisher information and estimation bounds.

A :class:`PhaseFamily` wraps any map (phi1, phi2) -> density matrix.
The QFIM is evaluated in the sandwich form

    F_ab = sum_{i,j : w_i + w_j > cut} 2 Re(<i|da rho|j><j|db rho|i>) / (w_i + w_j)

over the eigenbasis of the base-point state, which is well defined for
degenerate and rank-deficient spectra (terms outside the support are
dropped). State derivatives default to central finite differences with
step 1e-6; families of the covariant form
rho(phi) = U(phi) rho U(phi)^dag with U = diag(1, e^(i phi1), e^(i phi2))
may install the exact commutator derivatives instead.

Scalar figures of merit for two independent vs simultaneous estimation:

    delta_ind = 1/F_11 + 1/F_22        (each parameter alone)
    delta_sim = tr F^(-1)              (both at once)
    R = delta_ind / (delta_sim / 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .tensor import NotHermitian, hermitian_eig

FD_STEP = 1e-6
SUPPORT_CUTOFF = 1e-10
DERIVATIVE_HERMITICITY_TOL = 1e-9
QFIM_SYMMETRY_TOL = 1e-8
QFIM_PSD_TOL = 1e-8
DET_CUTOFF = 1e-14


class SingularQfim(ValueError):
    """QFIM is (numerically) singular; no finite simultaneous bound."""


@dataclass(frozen=True)
class PhaseFamily:
    """Density-matrix family over the two estimated phases.

    ``generator(phi1, phi2)`` returns the state; ``base_point`` is where
    derivatives and the QFIM are taken. ``analytic_derivatives``, when
    given, maps the base point to the exact pair (d rho/d phi1,
    d rho/d phi2) and replaces finite differencing.
    """

    generator: Callable[[float, float], np.ndarray]
    base_point: tuple[float, float]
    analytic_derivatives: Callable[
        [float, float], tuple[np.ndarray, np.ndarray]
    ] | None = None


def diagonal_phase_derivatives(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact derivatives for covariant families, d_a rho = i [N_a, rho]
    with number operators N_1 = diag(0,1,0), N_2 = diag(0,0,1)."""
    rho = np.asarray(rho, dtype=np.complex128)
    n1 = np.diag([0.0, 1.0, 0.0]).astype(np.complex128)
    n2 = np.diag([0.0, 0.0, 1.0]).astype(np.complex128)
    d1 = 1j * (n1 @ rho - rho @ n1)
    d2 = 1j * (n2 @ rho - rho @ n2)
    return d1, d2


def covariant_family(
    generator: Callable[[float, float], np.ndarray],
    base_point: tuple[float, float],
) -> PhaseFamily:
    """PhaseFamily with the exact commutator derivatives installed."""

    def derivs(phi1: float, phi2: float):
        return diagonal_phase_derivatives(generator(phi1, phi2))

    return PhaseFamily(
        generator=generator, base_point=base_point, analytic_derivatives=derivs
    )


def d_rho(family: PhaseFamily, which: int) -> np.ndarray:
    """Central finite-difference derivative of the family in parameter
    ``which`` (0 or 1) at the base point. The result is symmetrized;
    a Hermiticity violation above 1e-9 raises."""
    if which not in (0, 1):
        raise ValueError(f"which must be 0 or 1, got {which}")
    p1, p2 = family.base_point
    h = FD_STEP
    if which == 0:
        hi = family.generator(p1 + h, p2)
        lo = family.generator(p1 - h, p2)
    else:
        hi = family.generator(p1, p2 + h)
        lo = family.generator(p1, p2 - h)
    d = (np.asarray(hi, dtype=np.complex128) - np.asarray(lo, dtype=np.complex128)) / (
        2.0 * h
    )
    violation = float(np.max(np.abs(d - d.conj().T)))
    if violation > DERIVATIVE_HERMITICITY_TOL:
        raise NotHermitian(violation, context="state derivative")
    return (d + d.conj().T) / 2.0


@dataclass(frozen=True)
class Qfim2:
    """2x2 quantum Fisher information matrix."""

    f11: float
    f12: float
    f21: float
    f22: float

    def __post_init__(self):
        if abs(self.f12 - self.f21) > QFIM_SYMMETRY_TOL:
            raise ValueError(
                f"QFIM must be symmetric: f12={self.f12}, f21={self.f21}"
            )
        # 2x2 PSD: non-negative diagonal and determinant
        det = self.f11 * self.f22 - self.f12 * self.f21
        if self.f11 < -QFIM_PSD_TOL or self.f22 < -QFIM_PSD_TOL or det < -QFIM_PSD_TOL:
            raise ValueError(
                f"QFIM must be positive semidefinite: diag=({self.f11}, "
                f"{self.f22}), det={det}"
            )

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.f11, self.f12], [self.f21, self.f22]])

    @property
    def det(self) -> float:
        return self.f11 * self.f22 - self.f12 * self.f21


@dataclass(frozen=True)
class BoundsReport:
    delta_ind: float
    delta_sim: float
    ratio_r: float


def qfim(family: PhaseFamily) -> Qfim2:
    """Quantum Fisher information matrix of the family at its base point."""
    rho0 = np.asarray(family.generator(*family.base_point), dtype=np.complex128)
    eig = hermitian_eig(rho0)
    w = np.where(eig.values < SUPPORT_CUTOFF, 0.0, eig.values)
    v = eig.vectors
    if family.analytic_derivatives is not None:
        d1, d2 = family.analytic_derivatives(*family.base_point)
    else:
        d1 = d_rho(family, 0)
        d2 = d_rho(family, 1)
    s = [v.conj().T @ np.asarray(d, dtype=np.complex128) @ v for d in (d1, d2)]
    n = rho0.shape[0]
    f = np.zeros((2, 2))
    for a in range(2):
        for b in range(2):
            acc = 0.0
            for i in range(n):
                for j in range(n):
                    denom = w[i] + w[j]
                    if denom > SUPPORT_CUTOFF:
                        acc += 2.0 * (s[a][i, j] * s[b][j, i]).real / denom
            f[a, b] = acc
    return Qfim2(f11=f[0, 0], f12=f[0, 1], f21=f[1, 0], f22=f[1, 1])


def bounds(f: Qfim2) -> BoundsReport:
    """Independent and simultaneous estimation bounds from a QFIM.

    Raises :class:`SingularQfim` when det F <= 1e-14 (estimation bound
    diverges)."""
    det = f.det
    if det <= DET_CUTOFF:
        raise SingularQfim(
            f"estimation bound diverges: det F = {det:.3e} <= {DET_CUTOFF}"
        )
    delta_ind = 1.0 / f.f11 + 1.0 / f.f22
    delta_sim = (f.f11 + f.f22) / det
    return BoundsReport(
        delta_ind=delta_ind,
        delta_sim=delta_sim,
        ratio_r=delta_ind / (delta_sim / 2.0),
    )
