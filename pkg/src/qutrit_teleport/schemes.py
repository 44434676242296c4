"""Closed-form precision factors per protection scheme and their optima.

Every scheme's balanced-input teleportation output lands in the family
rho(G) = (1-G)/3 I + G |psi><psi|, and its scaled total-variance factor
obeys the single law

    zeta(G) = (G + 2) / (3 G^2),

so each scheme is summarized by its coherence factor G = num/den:

    plain decay   G = (d^2 - 4d + 3) / 3
    weak meas.    G = dbar pbar x^2 (2x + dbar pbar) / (3 W),  x = 1 - p_r
    env. assisted G = dbar (dbar + 2 xb) / (xb^2 + 2 dbar^2),  xb = 1 - q_r

The environment-assisted factor exists in two printed variants that
disagree; ``ZetaVariant.CORRECTED`` (numerator dbar(dbar + 2 xb)) is the
one consistent with direct simulation and is the default everywhere.
``AS_PRINTED`` (numerator dbar(dbar + 2 xb^2)) is kept for auditing.

The published closed form for the optimal weak-measurement reversal
strength frequently leaves [0, 1]; it is exposed unclamped with a range
flag, while the normative optimum is a golden-section minimizer of the
corrected zeta.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .teleportation import eam_normalization, wm_normalization

IND_SCALE = 3.0 * np.sqrt(2.0) / 4.0
SIM_SCALE = 27.0 * np.sqrt(2.0) / 34.0
STRENGTH_TOL = 1e-10
STRENGTH_HI = 1.0 - 1e-9
_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


class DivergenceError(ValueError):
    """Coherence factor vanishes; the precision factor diverges."""


class SchemeKind(enum.Enum):
    PLAIN_AD = "plain-ad"
    WM = "wm"
    EAM = "eam"


class ZetaVariant(enum.Enum):
    CORRECTED = "corrected"
    AS_PRINTED = "as-printed"


@dataclass(frozen=True)
class SchemeClosedForms:
    """zeta together with the coherence-factor fraction it came from."""

    zeta: float
    coherence_num: float
    coherence_den: float
    variant: ZetaVariant = ZetaVariant.CORRECTED

    @property
    def coherence(self) -> float:
        return self.coherence_num / self.coherence_den


@dataclass(frozen=True)
class PublishedStrength:
    """Published optimal reversal strength, unclamped, with range flag."""

    value: float
    in_range: bool


@dataclass(frozen=True)
class SchemeResult:
    """Optimized summary of one scheme at one noise point."""

    kind: SchemeKind
    zeta_opt: float
    strength_opt: float
    success_probability: float
    delta_ind: float
    delta_sim: float


def zeta_from_coherence(g: float) -> float:
    """The universal law zeta = (G + 2) / (3 G^2)."""
    if g <= 0.0:
        raise DivergenceError(f"coherence factor must be positive, got {g}")
    return (g + 2.0) / (3.0 * g * g)


def _check_d(d: float, *, allow_one: bool = False) -> float:
    d = float(d)
    hi_ok = d <= 1.0 if allow_one else d < 1.0
    if not (0.0 <= d and hi_ok):
        bound = "[0, 1]" if allow_one else "[0, 1)"
        raise DivergenceError(f"decay probability must lie in {bound}, got {d}")
    return d


def zeta_plain(d: float) -> float:
    """Unprotected scheme: (d^2 - 4d + 9) / (d^2 - 4d + 3)^2."""
    d = _check_d(d)
    num = d * d - 4.0 * d + 9.0
    den = d * d - 4.0 * d + 3.0
    return num / (den * den)


def zeta_wm(d: float, p: float, p_r: float) -> SchemeClosedForms:
    """Weak-measurement scheme at symmetric strengths (p = q, p_r = q_r)."""
    d = _check_d(d, allow_one=True)
    db, pb, x = 1.0 - d, 1.0 - float(p), 1.0 - float(p_r)
    f = db * pb * x * x * (2.0 * x + db * pb) / 3.0
    h = wm_normalization(d, p, p, p_r, p_r)
    if f <= 0.0 or h <= 0.0:
        raise DivergenceError(
            f"coherence factor vanishes at d={d}, p={p}, p_r={p_r}"
        )
    g = f / h
    return SchemeClosedForms(
        zeta=zeta_from_coherence(g), coherence_num=f, coherence_den=h
    )


def zeta_eam(
    d: float, q_r: float, variant: ZetaVariant = ZetaVariant.CORRECTED
) -> SchemeClosedForms:
    """Environment-assisted scheme at symmetric reversal (p_r = q_r)."""
    d = _check_d(d, allow_one=True)
    db, xb = 1.0 - d, 1.0 - float(q_r)
    if variant is ZetaVariant.CORRECTED:
        u = db * (db + 2.0 * xb)
    else:
        u = db * (db + 2.0 * xb * xb)
    v = xb * xb + 2.0 * db * db
    if u <= 0.0 or v <= 0.0:
        raise DivergenceError(
            f"coherence factor vanishes at d={d}, q_r={q_r} ({variant.value})"
        )
    g = u / v
    return SchemeClosedForms(
        zeta=zeta_from_coherence(g),
        coherence_num=u,
        coherence_den=v,
        variant=variant,
    )


def published_optimal_strength(
    kind: SchemeKind, d: float, p: float = 0.0
) -> PublishedStrength:
    """Published optimal reversal strength, evaluated verbatim.

    For the weak-measurement scheme the expression can exceed 1 (or drop
    below 0); the raw value is returned with ``in_range`` flagging
    whether it lies in [0, 1]. For the environment-assisted scheme the
    published optimum is q_r = d, always in range.
    """
    d = float(d)
    if kind is SchemeKind.EAM:
        return PublishedStrength(value=d, in_range=0.0 <= d <= 1.0)
    if kind is not SchemeKind.WM:
        raise ValueError(f"no published optimal strength for {kind}")
    db, pb = 1.0 - d, 1.0 - float(p)
    k = 1.0 + 2.0 * d * d * pb * pb
    root = np.sqrt(9.0 - 4.0 * d * pb * (1.0 - d * pb) ** 2 * (2.0 - d * pb))
    value = (
        2.0 + db + d * pb + 2.0 * d * d * pb * pb * (2.0 + pb * db) - db * pb * root
    ) / (2.0 * k)
    return PublishedStrength(value=float(value), in_range=0.0 <= value <= 1.0)


def _golden_min(fn: Callable[[float], float], lo: float, hi: float, tol: float):
    """Deterministic golden-section minimizer on [lo, hi].

    Near a smooth interior minimum the objective differences fall below
    float resolution before the bracket reaches ``tol``, which can leave
    the midpoint a few 1e-9 off; a single parabolic fit through three
    points straddling the result polishes that away.
    """
    lo0, hi0 = lo, hi
    c = hi - _INV_PHI * (hi - lo)
    d_ = lo + _INV_PHI * (hi - lo)
    fc, fd = fn(c), fn(d_)
    while hi - lo > tol:
        if fc < fd:
            hi, d_, fd = d_, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d_, fd
            d_ = lo + _INV_PHI * (hi - lo)
            fd = fn(d_)
    x = (lo + hi) / 2.0
    fx = fn(x)
    h = 1e-5
    if lo0 < x - h and x + h < hi0:
        f_lo, f_hi = fn(x - h), fn(x + h)
        denom = f_hi - 2.0 * fx + f_lo
        if denom > 0.0:
            step = 0.5 * h * (f_lo - f_hi) / denom
            if abs(step) < h:
                # keep the fit only when it actually improves; near a
                # minimum whose curvature scale is below h the parabola
                # is unreliable
                cand = x + step
                f_cand = fn(cand)
                if f_cand <= fx:
                    x, fx = cand, f_cand
    return x, fx


def numeric_optimal_strength(
    kind: SchemeKind,
    d: float,
    p: float = 0.0,
    variant: ZetaVariant = ZetaVariant.CORRECTED,
) -> tuple[float, float]:
    """Reversal strength minimizing zeta over [0, 1), by golden section
    to 1e-10 in the strength. Returns (strength, zeta)."""
    if kind is SchemeKind.WM:
        def objective(s: float) -> float:
            return zeta_wm(d, p, s).zeta
    elif kind is SchemeKind.EAM:
        def objective(s: float) -> float:
            return zeta_eam(d, s, variant).zeta
    else:
        raise ValueError(f"no reversal strength to optimize for {kind}")
    return _golden_min(objective, 0.0, STRENGTH_HI, STRENGTH_TOL)


def success_probability(
    kind: SchemeKind, d: float, p: float, strength: float
) -> float:
    """Preparation success probability of a scheme at reversal
    ``strength`` (symmetric parameters)."""
    if kind is SchemeKind.PLAIN_AD:
        return 1.0
    if kind is SchemeKind.WM:
        return wm_normalization(d, p, p, strength, strength)
    if kind is SchemeKind.EAM:
        return eam_normalization(d, strength, strength)
    raise ValueError(f"unknown scheme {kind}")


def variance_bounds(zeta: float) -> tuple[float, float]:
    """Published scaling of the two estimation bounds with zeta:
    delta_ind = (3 sqrt2 / 4) zeta, delta_sim = (27 sqrt2 / 34) zeta."""
    return IND_SCALE * zeta, SIM_SCALE * zeta


def delta_comparison(
    d: float, p: float, variant: ZetaVariant = ZetaVariant.CORRECTED
) -> float:
    """Probability-weighted precision advantage of the environment-
    assisted scheme over the weak-measurement scheme, both at their
    numeric optima:

        Delta = P_eam / zeta_eam - P_wm / zeta_wm
    """
    s_wm, z_wm = numeric_optimal_strength(SchemeKind.WM, d, p, variant)
    s_eam, z_eam = numeric_optimal_strength(SchemeKind.EAM, d, p, variant)
    p_wm = success_probability(SchemeKind.WM, d, p, s_wm)
    p_eam = success_probability(SchemeKind.EAM, d, p, s_eam)
    return p_eam / z_eam - p_wm / z_wm
