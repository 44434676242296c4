"""Qutrit noise operators, measurement filters, gates, and channel application.

Conventions: single-qutrit basis |0>, |1>, |2> with |0> the ground
level; the decay channel empties levels 1 and 2 into 0 with
probabilities d1 and d2. Two-qutrit operators use the flat index
3*(first) + (second). ``omega = exp(2 pi i / 3)``.

Operator sets come in two kinds. A ``FULL_CHANNEL`` set is trace
preserving (sum K^dag K = I) and is consumed by :func:`apply_channel`.
A ``SELECTIVE`` set keeps a subset of outcomes (sum K^dag K <= I); its
members go through :func:`apply_selective`, which renormalizes and
reports the outcome probability.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .tensor import DimensionMismatch, dagger, hermitian_eig, kron

OMEGA = np.exp(2j * np.pi / 3)
COMPLETENESS_TOL = 1e-12
SELECTIVE_EIG_TOL = 1e-12
MIN_PROBABILITY = 1e-15


class VanishingProbability(ValueError):
    """Selected measurement branch has (numerically) zero weight."""


class KrausKind(enum.Enum):
    FULL_CHANNEL = "full-channel"
    SELECTIVE = "selective"


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class NoiseParams:
    """Decay probabilities of levels 1 and 2; optionally tied to a time."""

    d1: float
    d2: float
    gamma_t: float | None = None

    def __post_init__(self):
        _check_unit_interval("d1", self.d1)
        _check_unit_interval("d2", self.d2)
        if self.gamma_t is not None:
            if self.gamma_t < 0:
                raise ValueError(f"gamma_t must be >= 0, got {self.gamma_t}")
            d = 1.0 - np.exp(-self.gamma_t)
            if abs(self.d1 - d) > 1e-12 or abs(self.d2 - d) > 1e-12:
                raise ValueError(
                    "gamma_t implies d1 = d2 = 1 - exp(-gamma_t) "
                    f"= {d}, got d1={self.d1}, d2={self.d2}"
                )

    @classmethod
    def from_gamma_t(cls, gamma_t: float) -> "NoiseParams":
        d = 1.0 - np.exp(-float(gamma_t))
        return cls(d1=d, d2=d, gamma_t=float(gamma_t))

    @property
    def symmetric(self) -> bool:
        return self.d1 == self.d2


@dataclass(frozen=True)
class MeasurementStrengths:
    """Pre-measurement strengths (p, q) and reversal strengths (p_r, q_r)."""

    p: float = 0.0
    q: float = 0.0
    p_r: float = 0.0
    q_r: float = 0.0

    def __post_init__(self):
        for name in ("p", "q", "p_r", "q_r"):
            _check_unit_interval(name, getattr(self, name))

    @property
    def symmetric(self) -> bool:
        return self.p == self.q and self.p_r == self.q_r


@dataclass(frozen=True)
class KrausSet:
    """Validated operator set; see module docstring for the two kinds."""

    operators: tuple[np.ndarray, ...]
    kind: KrausKind = KrausKind.FULL_CHANNEL

    def __post_init__(self):
        if not self.operators:
            raise ValueError("KrausSet needs at least one operator")
        dim = self.operators[0].shape[0]
        for op in self.operators:
            if op.ndim != 2 or op.shape != (dim, dim):
                raise DimensionMismatch(
                    f"all operators must be {dim}x{dim}, got {op.shape}"
                )
        s = self.completeness_sum()
        eye = np.eye(dim)
        if self.kind is KrausKind.FULL_CHANNEL:
            dev = float(np.max(np.abs(s - eye)))
            if dev > COMPLETENESS_TOL:
                raise ValueError(
                    f"full channel violates completeness: max dev {dev:.3e}"
                )
        else:
            gap = hermitian_eig(eye - s).values
            if gap.min() < -SELECTIVE_EIG_TOL or gap.max() > 1.0 + SELECTIVE_EIG_TOL:
                raise ValueError(
                    "selective set must satisfy 0 <= sum K^dag K <= I; "
                    f"eigenvalues of I - sum in [{gap.min():.3e}, {gap.max():.3e}]"
                )

    def completeness_sum(self) -> np.ndarray:
        dim = self.operators[0].shape[0]
        s = np.zeros((dim, dim), dtype=np.complex128)
        for op in self.operators:
            s += dagger(op) @ op
        return s


# ---------------------------------------------------------------------------
# operator constructors
# ---------------------------------------------------------------------------

def ad_kraus(noise: NoiseParams) -> KrausSet:
    """Decay channel for a V-configuration qutrit: both excited levels
    drain independently into |0>."""
    d1, d2 = noise.d1, noise.d2
    e0 = np.diag([1.0, np.sqrt(1.0 - d1), np.sqrt(1.0 - d2)]).astype(np.complex128)
    e1 = np.zeros((3, 3), dtype=np.complex128)
    e1[0, 1] = np.sqrt(d1)
    e2 = np.zeros((3, 3), dtype=np.complex128)
    e2[0, 2] = np.sqrt(d2)
    return KrausSet(operators=(e0, e1, e2), kind=KrausKind.FULL_CHANNEL)


def wm_operators(ms: MeasurementStrengths) -> KrausSet:
    """Partial-collapse pre-measurement: null outcome plus the two
    collapse outcomes, as a complete channel."""
    p, q = ms.p, ms.q
    m0 = np.diag([1.0, np.sqrt(1.0 - p), np.sqrt(1.0 - q)]).astype(np.complex128)
    m1 = np.zeros((3, 3), dtype=np.complex128)
    m1[1, 1] = np.sqrt(p)
    m2 = np.zeros((3, 3), dtype=np.complex128)
    m2[2, 2] = np.sqrt(q)
    return KrausSet(operators=(m0, m1, m2), kind=KrausKind.FULL_CHANNEL)


def wm_selective(ms: MeasurementStrengths) -> KrausSet:
    """Null outcome of the pre-measurement alone; the protocol keeps
    only this branch."""
    m0 = wm_operators(ms).operators[0]
    return KrausSet(operators=(m0,), kind=KrausKind.SELECTIVE)


def qmr_operator(ms: MeasurementStrengths) -> np.ndarray:
    """Reversal filter: re-balances amplitudes after the decay window.

    Note the reversed pairing relative to the pre-measurement: the
    |0> amplitude is suppressed by both reversal strengths, |1> by the
    q_r one and |2> by the p_r one.
    """
    pr, qr = ms.p_r, ms.q_r
    return np.diag(
        [np.sqrt((1.0 - pr) * (1.0 - qr)), np.sqrt(1.0 - qr), np.sqrt(1.0 - pr)]
    ).astype(np.complex128)


def qmr_selective(ms: MeasurementStrengths) -> KrausSet:
    return KrausSet(operators=(qmr_operator(ms),), kind=KrausKind.SELECTIVE)


def tensor_kraus(a: KrausSet, b: KrausSet) -> KrausSet:
    """Product set acting on two subsystems: every pairwise Kronecker
    product. Kind is FULL_CHANNEL only when both factors are."""
    ops = tuple(kron(x, y) for x in a.operators for y in b.operators)
    kind = (
        KrausKind.FULL_CHANNEL
        if a.kind is KrausKind.FULL_CHANNEL and b.kind is KrausKind.FULL_CHANNEL
        else KrausKind.SELECTIVE
    )
    return KrausSet(operators=ops, kind=kind)


# ---------------------------------------------------------------------------
# qutrit gate set
# ---------------------------------------------------------------------------

def gate_x(i: int) -> np.ndarray:
    """Cyclic shift X^i: |m> -> |m + i mod 3>."""
    m = np.zeros((3, 3), dtype=np.complex128)
    for k in range(3):
        m[(k + int(i)) % 3, k] = 1.0
    return m


def gate_z(k: int) -> np.ndarray:
    """Phase gate Z^k: |m> -> omega^(k m) |m>."""
    return np.diag([OMEGA ** (int(k) * m) for m in range(3)]).astype(np.complex128)


def gate_h() -> np.ndarray:
    """Qutrit Fourier gate, entries omega^(m n) / sqrt(3)."""
    m = np.array(
        [[OMEGA ** (r * c) for c in range(3)] for r in range(3)],
        dtype=np.complex128,
    )
    return m / np.sqrt(3.0)


def gate_rc() -> np.ndarray:
    """Two-qutrit right shift: |m, n> -> |m, n + m mod 3>."""
    m = np.zeros((9, 9), dtype=np.complex128)
    for a in range(3):
        for b in range(3):
            m[3 * a + (b + a) % 3, 3 * a + b] = 1.0
    return m


def gate_lc() -> np.ndarray:
    """Two-qutrit left shift: |m, n> -> |m, n - m mod 3>."""
    m = np.zeros((9, 9), dtype=np.complex128)
    for a in range(3):
        for b in range(3):
            m[3 * a + (b - a) % 3, 3 * a + b] = 1.0
    return m


# ---------------------------------------------------------------------------
# channel application
# ---------------------------------------------------------------------------

def apply_channel(rho: np.ndarray, ks: KrausSet) -> np.ndarray:
    """Deterministic evolution sum_k K rho K^dag of a FULL_CHANNEL set."""
    if ks.kind is not KrausKind.FULL_CHANNEL:
        raise ValueError(
            "apply_channel requires a FULL_CHANNEL set; use apply_selective "
            "for individual outcomes of a selective set"
        )
    rho = np.asarray(rho, dtype=np.complex128)
    dim = ks.operators[0].shape[0]
    if rho.shape != (dim, dim):
        raise DimensionMismatch(
            f"state is {rho.shape}, operators are {dim}x{dim}"
        )
    out = np.zeros_like(rho)
    for op in ks.operators:
        out += op @ rho @ dagger(op)
    return out


def apply_selective(rho: np.ndarray, op: np.ndarray) -> tuple[np.ndarray, float]:
    """Apply one measurement operator, renormalize, return the branch
    probability.

    ``op`` must satisfy op^dag op <= I (it is one outcome of some
    measurement). Raises :class:`VanishingProbability` when the branch
    weight is at or below 1e-15.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    op = np.asarray(op, dtype=np.complex128)
    if op.shape != rho.shape:
        raise DimensionMismatch(f"state is {rho.shape}, operator is {op.shape}")
    gap = hermitian_eig(np.eye(op.shape[0]) - dagger(op) @ op).values
    if gap.min() < -SELECTIVE_EIG_TOL:
        raise ValueError(
            f"operator violates op^dag op <= I by {-gap.min():.3e}"
        )
    unnorm = op @ rho @ dagger(op)
    prob = float(np.trace(unnorm).real)
    if prob <= MIN_PROBABILITY:
        raise VanishingProbability(
            f"outcome has vanishing probability ({prob:.3e})"
        )
    return unnorm / prob, prob
