"""Machine-checkable verification suite behind the ``verify`` CLI command.

Each check compares a measured quantity against its expected value at an
explicit tolerance and lands in one of three statuses: ``pass``,
``fail``, or ``informational``. Informational entries document known
discrepancies between published closed forms and first-principles
recomputation; they never gate the exit code.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import metrology, schemes
from .channels import (
    MeasurementStrengths,
    NoiseParams,
    ad_kraus,
    wm_operators,
)
from .schemes import SchemeKind, ZetaVariant
from .teleportation import (
    InputState,
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

PUBLISHED_RATIO_R = 17.0 / 9.0
FIRST_PRINCIPLES_RATIO_R = 1.5
PUBLISHED_QFIM_DIAG = 4.0 * np.sqrt(2.0) / 3.0
PUBLISHED_QFIM_OFFDIAG = 4.0 / 9.0

PROBE_INPUTS = (
    InputState.balanced(np.pi / 7, np.pi / 3),
    InputState(0.8, 0.6 / np.sqrt(2), 0.6 / np.sqrt(2), 0.4, 1.1),
    InputState(0.2, 0.5, np.sqrt(0.71), 2.2, 5.1),
    InputState(1 / np.sqrt(2), 0.5, 0.5, 6.0, 0.7),
    InputState(0.6, 0.64, 0.48, 1.9, 2.8),
)

PARAM_GRID = tuple(np.linspace(0.0, 0.8, 5))
BASE_POINT = (np.pi / 7, np.pi / 3)
ALT_BASE_POINT = (0.9, 2.1)


@dataclass
class Check:
    name: str
    status: str
    measured: object
    expected: object
    tolerance: float | None
    note: str


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "informational": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "all_normative_passed": self.all_passed,
            "counts": self.counts(),
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def _check(name, measured, expected, tol, note) -> Check:
    ok = abs(measured - expected) <= tol
    return Check(
        name=name,
        status="pass" if ok else "fail",
        measured=float(measured),
        expected=float(expected),
        tolerance=float(tol),
        note=note,
    )


def _bound_check(name, measured, bound, note, *, strict=False) -> Check:
    ok = measured > bound if strict else measured >= bound
    op = ">" if strict else ">="
    return Check(
        name=name,
        status="pass" if ok else "fail",
        measured=float(measured),
        expected=f"{op} {bound}",
        tolerance=None,
        note=note,
    )


def _frob(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


# ---------------------------------------------------------------------------
# individual check groups
# ---------------------------------------------------------------------------

def _kraus_checks() -> list[Check]:
    grid = np.linspace(0.0, 1.0, 10)
    dev_ad = 0.0
    dev_wm = 0.0
    eye = np.eye(3)
    for a in grid:
        for b in grid:
            s = ad_kraus(NoiseParams(d1=a, d2=b)).completeness_sum()
            dev_ad = max(dev_ad, float(np.max(np.abs(s - eye))))
            s = wm_operators(MeasurementStrengths(p=a, q=b)).completeness_sum()
            dev_wm = max(dev_wm, float(np.max(np.abs(s - eye))))
    return [
        _check(
            "kraus_completeness_ad", dev_ad, 0.0, 1e-12,
            "decay channel satisfies sum K^dag K = I on a 10x10 (d1, d2) grid",
        ),
        _check(
            "kraus_completeness_wm", dev_wm, 0.0, 1e-12,
            "pre-measurement satisfies sum K^dag K = I on a 10x10 (p, q) grid",
        ),
    ]


def _ideal_teleport_check() -> Check:
    ideal = bell_resource()
    worst = 0.0
    for probe in PROBE_INPUTS:
        out = teleport(probe, ideal)
        worst = max(worst, _frob(out - probe.projector()))
    return _check(
        "ideal_teleport_identity", worst, 0.0, 1e-12,
        "noiseless circuit reproduces five probe inputs exactly",
    )


def _oracle_equivalence_checks() -> list[Check]:
    worst = {"plain": 0.0, "wm": 0.0, "eam": 0.0}
    balanced = PROBE_INPUTS[0]
    for d in PARAM_GRID:
        noise = NoiseParams(d1=float(d), d2=float(d))
        prep = prepare_plain(noise)
        sim = teleport(balanced, prep.rho)
        closed = closed_output_plain(noise, balanced)
        worst["plain"] = max(worst["plain"], _frob(sim - closed))
        for p in PARAM_GRID:
            for pr in PARAM_GRID:
                ms = MeasurementStrengths(
                    p=float(p), q=float(p), p_r=float(pr), q_r=float(pr)
                )
                sim = teleport(
                    balanced, prepare_wm(noise, ms).rho
                )
                closed = closed_output_wm(noise, ms, balanced)
                worst["wm"] = max(worst["wm"], _frob(sim - closed))
        for pr in PARAM_GRID:
            ms = MeasurementStrengths(p_r=float(pr), q_r=float(pr))
            sim = teleport(balanced, prepare_eam(noise, ms).rho)
            closed = closed_output_eam(noise, ms, balanced)
            worst["eam"] = max(worst["eam"], _frob(sim - closed))
    note = "closed-form output matches density-matrix simulation on the grid"
    return [
        _check(f"oracle_equivalence_{k}", worst[k], 0.0, 1e-10, note)
        for k in ("plain", "wm", "eam")
    ]


def _baseline_checks() -> list[Check]:
    ds = np.linspace(0.01, 0.99, 50)
    zs = [schemes.zeta_plain(float(d)) for d in ds]
    min_diff = min(b - a for a, b in zip(zs, zs[1:]))
    law_dev = 0.0
    for d in np.linspace(0.0, 0.95, 20):
        g = (d * d - 4.0 * d + 3.0) / 3.0
        law_dev = max(
            law_dev,
            abs(schemes.zeta_plain(float(d)) - schemes.zeta_from_coherence(g)),
        )
    return [
        _check(
            "baseline_noiseless", schemes.zeta_plain(0.0), 1.0, 1e-12,
            "no decay leaves the precision factor at its floor",
        ),
        _check(
            "baseline_midpoint", schemes.zeta_plain(0.5), 4.64, 1e-10,
            "7.25 / 1.5625 at half decay",
        ),
        _bound_check(
            "baseline_monotone", min_diff, 0.0,
            "precision factor strictly grows with decay (50-point grid)",
            strict=True,
        ),
        _check(
            "baseline_coherence_law", law_dev, 0.0, 1e-12,
            "zeta_plain equals (G+2)/(3G^2) with G = (d^2-4d+3)/3",
        ),
    ]


def _universal_law_checks() -> Check:
    balanced = PROBE_INPUTS[0]
    worst = 0.0
    for d in PARAM_GRID:
        noise = NoiseParams(d1=float(d), d2=float(d))
        g = coherence_factor(
            teleport(balanced, prepare_plain(noise).rho),
            balanced,
        )
        worst = max(
            worst, abs(schemes.zeta_plain(float(d)) - schemes.zeta_from_coherence(g))
        )
        for pr in PARAM_GRID:
            ms = MeasurementStrengths(p_r=float(pr), q_r=float(pr))
            g = coherence_factor(
                teleport(balanced, prepare_eam(noise, ms).rho),
                balanced,
            )
            worst = max(
                worst,
                abs(
                    schemes.zeta_eam(float(d), float(pr)).zeta
                    - schemes.zeta_from_coherence(g)
                ),
            )
            for p in PARAM_GRID:
                ms = MeasurementStrengths(
                    p=float(p), q=float(p), p_r=float(pr), q_r=float(pr)
                )
                g = coherence_factor(
                    teleport(balanced, prepare_wm(noise, ms).rho),
                    balanced,
                )
                worst = max(
                    worst,
                    abs(
                        schemes.zeta_wm(float(d), float(p), float(pr)).zeta
                        - schemes.zeta_from_coherence(g)
                    ),
                )
    return _check(
        "universal_zeta_law", worst, 0.0, 1e-10,
        "every scheme's zeta equals (G+2)/(3G^2) with G measured from simulation",
    )


def _eam_protection_checks() -> list[Check]:
    worst_state = 0.0
    worst_zeta = 0.0
    worst_prob = 0.0
    for d in np.arange(0.1, 0.95, 0.1):
        noise = NoiseParams(d1=float(d), d2=float(d))
        ms = MeasurementStrengths(p_r=float(d), q_r=float(d))
        prep = prepare_eam(noise, ms)
        for probe in PROBE_INPUTS[:2]:
            out = teleport(probe, prep.rho)
            worst_state = max(worst_state, _frob(out - probe.projector()))
        worst_zeta = max(worst_zeta, abs(schemes.zeta_eam(float(d), float(d)).zeta - 1.0))
        worst_prob = max(
            worst_prob, abs(prep.success_probability - (1.0 - d) ** 4)
        )
    return [
        _check(
            "eam_full_protection_state", worst_state, 0.0, 1e-10,
            "reversal strength q_r = d restores the input exactly",
        ),
        _check(
            "eam_full_protection_zeta", worst_zeta, 0.0, 1e-12,
            "corrected zeta equals 1 at q_r = d",
        ),
        _check(
            "eam_success_scaling", worst_prob, 0.0, 1e-12,
            "success probability at q_r = d equals (1-d)^4",
        ),
    ]


def _wm_limit_checks() -> list[Check]:
    # The residual at the optimum follows |zeta - 1| = (20/9) d (1 - p)
    # to leading order, so the limit is certified at p = 1 - 1e-5 and
    # the linear convergence order is pinned by halving 1 - p. The
    # residual at p = 1 - 1e-4 itself exceeds 1e-4 for d >= 0.45 and is
    # recorded informationally.
    worst_limit = 0.0
    worst_order_dev = 0.0
    literal_point = []
    worst_zeta_increase = -np.inf
    worst_prob_increase = -np.inf
    for d in (0.2, 0.5, 0.8):
        _, z = schemes.numeric_optimal_strength(SchemeKind.WM, d, 1.0 - 1e-5)
        worst_limit = max(worst_limit, abs(z - 1.0))
        _, z_h = schemes.numeric_optimal_strength(SchemeKind.WM, d, 1.0 - 1e-4)
        _, z_2h = schemes.numeric_optimal_strength(SchemeKind.WM, d, 1.0 - 2e-4)
        worst_order_dev = max(
            worst_order_dev, abs((z_h - 1.0) / (z_2h - 1.0) - 0.5)
        )
        literal_point.append(round(float(z_h) - 1.0, 12))
        prev_z = None
        for p in np.linspace(0.0, 0.95, 20):
            _, z = schemes.numeric_optimal_strength(SchemeKind.WM, d, float(p))
            if prev_z is not None:
                worst_zeta_increase = max(worst_zeta_increase, z - prev_z)
            prev_z = z
        prev_p = None
        for p in np.linspace(0.3, 0.95, 20):
            s, _ = schemes.numeric_optimal_strength(SchemeKind.WM, d, float(p))
            prob = schemes.success_probability(SchemeKind.WM, d, float(p), s)
            if prev_p is not None:
                worst_prob_increase = max(worst_prob_increase, prob - prev_p)
            prev_p = prob
    bump = []
    for p in np.linspace(0.0, 0.25, 6):
        s, _ = schemes.numeric_optimal_strength(SchemeKind.WM, 0.8, float(p))
        bump.append(schemes.success_probability(SchemeKind.WM, 0.8, float(p), s))
    return [
        _check(
            "wm_limit_strong_premeasure", worst_limit, 0.0, 1e-4,
            "optimal zeta tends to 1 as the pre-measurement strength "
            "approaches 1 (certified at p = 1 - 1e-5)",
        ),
        _check(
            "wm_limit_convergence_order", worst_order_dev, 0.0, 1e-2,
            "residual |zeta - 1| halves when 1 - p halves (linear "
            "convergence, measured between p = 1 - 2e-4 and p = 1 - 1e-4)",
        ),
        Check(
            name="wm_limit_residual_at_1e-4",
            status="informational",
            measured=literal_point,
            expected="(20/9) d (1 - p)",
            tolerance=None,
            note=(
                "residual at exactly p = 1 - 1e-4 for d in {0.2, 0.5, 0.8}; "
                "the leading coefficient (20/9) d puts it above 1e-4 for "
                "d >= 0.45, so the limit is certified closer to 1 instead"
            ),
        ),
        _bound_check(
            "wm_zeta_monotone", -worst_zeta_increase, -1e-10,
            "optimized zeta is non-increasing in p on [0, 0.95] "
            "(20-point grid, d in {0.2, 0.5, 0.8}); measured is "
            "-(max increase)",
        ),
        _bound_check(
            "wm_success_monotone", -worst_prob_increase, -1e-10,
            "optimized success probability is non-increasing in p on "
            "[0.3, 0.95], the strength range of the underlying claim; "
            "measured is -(max increase)",
        ),
        Check(
            name="wm_success_small_p_bump",
            status="informational",
            measured=float(max(bump) - bump[0]),
            expected="> 0",
            tolerance=None,
            note=(
                "at d = 0.8 the optimized success probability rises with p "
                "below p ~ 0.26 before decaying, so the monotone claim "
                "holds only from p = 0.3 upward"
            ),
        ),
    ]


def _balanced_family(resource: np.ndarray, base=BASE_POINT) -> metrology.PhaseFamily:
    def gen(f1: float, f2: float) -> np.ndarray:
        return teleport(InputState.balanced(f1, f2), resource)

    return metrology.PhaseFamily(generator=gen, base_point=base)


def _qfim_checks() -> list[Check]:
    ideal = bell_resource()
    f = metrology.qfim(_balanced_family(ideal))
    expect = np.array([[8.0 / 9.0, -4.0 / 9.0], [-4.0 / 9.0, 8.0 / 9.0]])
    dev_pure = float(np.max(np.abs(f.as_matrix() - expect)))

    plain = prepare_plain(NoiseParams(d1=0.5, d2=0.5)).rho
    f_a = metrology.qfim(_balanced_family(plain, BASE_POINT))
    f_b = metrology.qfim(_balanced_family(plain, ALT_BASE_POINT))
    dev_phase = float(np.max(np.abs(f_a.as_matrix() - f_b.as_matrix())))

    worst_ratio = 0.0
    balanced = PROBE_INPUTS[0]
    points = []
    for d in (0.0, 0.2, 0.5, 0.8):
        noise = NoiseParams(d1=d, d2=d)
        points.append(prepare_plain(noise).rho)
        for pr in (0.2, 0.6):
            ms = MeasurementStrengths(p_r=pr, q_r=pr)
            points.append(prepare_eam(noise, ms).rho)
            for p in (0.3, 0.7):
                ms = MeasurementStrengths(p=p, q=p, p_r=pr, q_r=pr)
                points.append(prepare_wm(noise, ms).rho)
    kept = 0
    for resource in points:
        out = teleport(balanced, resource)
        g = coherence_factor(out, balanced)
        if g <= 0.05:
            continue
        kept += 1
        rep = metrology.bounds(metrology.qfim(_balanced_family(resource)))
        worst_ratio = max(worst_ratio, abs(rep.ratio_r - FIRST_PRINCIPLES_RATIO_R))
    return [
        _check(
            "qfim_pure_state", dev_pure, 0.0, 1e-7,
            "noiseless balanced-input QFIM equals [[8/9, -4/9], [-4/9, 8/9]]",
        ),
        _check(
            "qfim_phase_invariance", dev_phase, 0.0, 1e-8,
            "QFIM is independent of the base phases (covariant family)",
        ),
        _check(
            "ratio_first_principles", worst_ratio, 0.0, 1e-6,
            f"R = delta_ind / (delta_sim / 2) equals 3/2 at every one of "
            f"{kept} grid points with G > 0.05",
        ),
        Check(
            name="ratio_published_vs_first_principles",
            status="informational",
            measured=FIRST_PRINCIPLES_RATIO_R,
            expected=PUBLISHED_RATIO_R,
            tolerance=None,
            note=(
                "published closed-form scaling implies R = 17/9; direct "
                "density-matrix computation gives a constant R = 3/2; the "
                "two are documented side by side, never merged"
            ),
        ),
        Check(
            name="qfim_published_constants",
            status="informational",
            measured=[8.0 / 9.0, -4.0 / 9.0],
            expected=[PUBLISHED_QFIM_DIAG, PUBLISHED_QFIM_OFFDIAG],
            tolerance=None,
            note=(
                "published QFIM (x zeta) has diagonal 4 sqrt(2)/3 and "
                "off-diagonal +4/9; first principles give 8/9 and -4/9 "
                "for the pure balanced state"
            ),
        ),
    ]


def _delta_checks() -> list[Check]:
    min_delta = np.inf
    min_delta_noisy = np.inf
    for gt in np.linspace(0.05, 2.0, 12):
        d = 1.0 - np.exp(-gt)
        for p in np.linspace(0.05, 0.95, 8):
            delta = schemes.delta_comparison(float(d), float(p))
            min_delta = min(min_delta, delta)
            if d > 0.05:
                min_delta_noisy = min(min_delta_noisy, delta)
    return [
        _bound_check(
            "delta_nonnegative", min_delta, -1e-12,
            "environment-assisted advantage never goes negative on the grid",
        ),
        _bound_check(
            "delta_strictly_positive", min_delta_noisy, 0.0,
            "advantage is strictly positive wherever d > 0.05",
            strict=True,
        ),
    ]


def _published_audit_checks() -> list[Check]:
    flagged = []
    total = 0
    for d in np.linspace(0.0, 0.9, 10):
        for p in np.linspace(0.0, 0.9, 10):
            total += 1
            res = schemes.published_optimal_strength(SchemeKind.WM, float(d), float(p))
            if not res.in_range:
                flagged.append((round(float(d), 6), round(float(p), 6)))
    example = schemes.published_optimal_strength(SchemeKind.WM, 0.5, 0.5)
    z_corr = schemes.zeta_eam(0.5, 0.5, ZetaVariant.CORRECTED).zeta
    z_ap = schemes.zeta_eam(0.5, 0.5, ZetaVariant.AS_PRINTED).zeta
    return [
        Check(
            name="published_strength_out_of_range",
            status="informational",
            measured=len(flagged),
            expected="> 0",
            tolerance=None,
            note=(
                f"published optimal reversal strength leaves [0, 1] at "
                f"{len(flagged)} of {total} grid points; the numeric "
                f"optimum is the normative value"
            ),
        ),
        _check(
            "published_strength_example", example.value, 1.0326457874192743, 1e-10,
            "published strength at d = p = 0.5 evaluates above 1 "
            f"(in_range = {example.in_range})",
        ),
        _check(
            "zeta_eam_as_printed_example", z_ap, 2.0, 1e-10,
            "as-printed variant at d = 0.5, q_r = 0.5",
        ),
        _check(
            "zeta_eam_corrected_example", z_corr, 1.0, 1e-10,
            "corrected variant at d = 0.5, q_r = 0.5 (full protection)",
        ),
        _check(
            "bounds_scaling_ratio",
            schemes.IND_SCALE / schemes.SIM_SCALE,
            17.0 / 18.0,
            1e-12,
            "published delta_ind/delta_sim scaling ratio equals 17/18, "
            "i.e. R = 17/9",
        ),
    ]


def run_verification() -> VerificationReport:
    report = VerificationReport()
    report.checks.extend(_kraus_checks())
    report.checks.append(_ideal_teleport_check())
    report.checks.extend(_oracle_equivalence_checks())
    report.checks.extend(_baseline_checks())
    report.checks.append(_universal_law_checks())
    report.checks.extend(_eam_protection_checks())
    report.checks.extend(_wm_limit_checks())
    report.checks.extend(_qfim_checks())
    report.checks.extend(_delta_checks())
    report.checks.extend(_published_audit_checks())
    return report
