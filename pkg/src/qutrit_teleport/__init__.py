"""Qutrit teleportation under amplitude damping: simulation, two-phase
QFIM metrology, and verification of the weak-measurement and
environment-assisted protection schemes."""

from .channels import (
    KrausKind,
    KrausSet,
    MeasurementStrengths,
    NoiseParams,
    VanishingProbability,
    ad_kraus,
    apply_channel,
    apply_selective,
    qmr_operator,
    wm_operators,
    wm_selective,
)
from .metrology import BoundsReport, PhaseFamily, Qfim2, SingularQfim, bounds, qfim
from .schemes import (
    DivergenceError,
    PublishedStrength,
    SchemeClosedForms,
    SchemeKind,
    SchemeResult,
    ZetaVariant,
    delta_comparison,
    numeric_optimal_strength,
    published_optimal_strength,
    success_probability,
    variance_bounds,
    zeta_eam,
    zeta_from_coherence,
    zeta_plain,
    zeta_wm,
)
from .teleportation import (
    InputState,
    ResourcePrep,
    bell_resource,
    closed_output_eam,
    closed_output_plain,
    closed_output_wm,
    coherence_factor,
    prepare_eam,
    prepare_plain,
    prepare_wm,
    teleport,
)
from .tensor import (
    DimensionMismatch,
    Eigensystem,
    NotHermitian,
    dagger,
    hermitian_eig,
    kron,
    mat_mul,
    partial_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "DimensionMismatch",
    "DivergenceError",
    "Eigensystem",
    "InputState",
    "KrausKind",
    "KrausSet",
    "MeasurementStrengths",
    "NoiseParams",
    "NotHermitian",
    "PhaseFamily",
    "PublishedStrength",
    "Qfim2",
    "ResourcePrep",
    "SchemeClosedForms",
    "SchemeKind",
    "SchemeResult",
    "SingularQfim",
    "VanishingProbability",
    "ZetaVariant",
    "ad_kraus",
    "apply_channel",
    "apply_selective",
    "bell_resource",
    "bounds",
    "closed_output_eam",
    "closed_output_plain",
    "closed_output_wm",
    "coherence_factor",
    "dagger",
    "delta_comparison",
    "hermitian_eig",
    "kron",
    "mat_mul",
    "numeric_optimal_strength",
    "partial_trace",
    "prepare_eam",
    "prepare_plain",
    "prepare_wm",
    "published_optimal_strength",
    "qfim",
    "qmr_operator",
    "success_probability",
    "teleport",
    "variance_bounds",
    "wm_operators",
    "wm_selective",
    "zeta_eam",
    "zeta_from_coherence",
    "zeta_plain",
    "zeta_wm",
]
