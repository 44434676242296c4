"""Command-line interface: figure-data CSV emitters, the sweep table,
and the verification report.

All CSV output is deterministic: 12 significant digits, ``.`` decimal
separator, ``,`` delimiter, Unix newlines, a header row, and byte-stable
across reruns. Exit codes: 0 on success, 2 on usage errors, 3 when
verification fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import metrology, schemes, verify
from .channels import MeasurementStrengths, NoiseParams
from .schemes import SchemeKind, ZetaVariant
from .teleportation import (
    InputState,
    coherence_factor,
    prepare_eam,
    prepare_plain,
    prepare_wm,
    teleport,
)

DEFAULT_P = (0.3, 0.5, 0.7, 0.9)
DEFAULT_QR = ("0", "0.5", "0.7", "optimal")
DEFAULT_PHI = (np.pi / 7, np.pi / 3)


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _write_csv(path: str, header: list[str], rows: list[list[str]]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _gamma_grid(args) -> list[float]:
    return [float(g) for g in np.linspace(0.0, args.gamma_t_max, args.steps)]


def _validate_common(parser: argparse.ArgumentParser, args) -> None:
    if getattr(args, "steps", None) is not None and args.steps < 2:
        parser.error("--steps must be at least 2")
    if getattr(args, "gamma_t_max", None) is not None and args.gamma_t_max <= 0:
        parser.error("--gamma-t-max must be positive")
    if getattr(args, "p", None) is not None:
        for p in args.p:
            if not 0.0 <= p < 1.0:
                parser.error(f"--p values must lie in [0, 1), got {p}")


def _parse_qr_modes(parser: argparse.ArgumentParser, values: list[str]) -> list[str]:
    for v in values:
        if v == "optimal":
            continue
        try:
            x = float(v)
        except ValueError:
            parser.error(f"--qr must be a number in [0, 1] or 'optimal', got {v!r}")
        if not 0.0 <= x <= 1.0:
            parser.error(f"--qr values must lie in [0, 1], got {v}")
    return values


# ---------------------------------------------------------------------------
# figure emitters
# ---------------------------------------------------------------------------

def cmd_fig2(args) -> int:
    rows = []
    for gt in _gamma_grid(args):
        d = 1.0 - np.exp(-gt)
        rows.append([_fmt(gt), _fmt(d), _fmt(schemes.zeta_plain(d))])
    _write_csv(os.path.join(args.out, "fig2.csv"), ["gamma_t", "d", "zeta1"], rows)
    return 0


def cmd_fig3(args) -> int:
    rows_a, rows_b = [], []
    for p in args.p:
        for gt in _gamma_grid(args):
            d = 1.0 - np.exp(-gt)
            s_num, z_opt = schemes.numeric_optimal_strength(SchemeKind.WM, d, p)
            pub = schemes.published_optimal_strength(SchemeKind.WM, d, p)
            prob = schemes.success_probability(SchemeKind.WM, d, p, s_num)
            rows_a.append(
                [
                    _fmt(gt),
                    _fmt(p),
                    _fmt(z_opt),
                    _fmt(s_num),
                    _fmt(pub.value),
                    "true" if pub.in_range else "false",
                ]
            )
            rows_b.append([_fmt(gt), _fmt(p), _fmt(prob)])
    _write_csv(
        os.path.join(args.out, "fig3a.csv"),
        [
            "gamma_t",
            "p",
            "zeta2_opt",
            "strength_opt_numeric",
            "strength_opt_published",
            "published_in_range",
        ],
        rows_a,
    )
    _write_csv(
        os.path.join(args.out, "fig3b.csv"), ["gamma_t", "p", "P_wm_opt"], rows_b
    )
    return 0


def cmd_fig4(args) -> int:
    rows_a, rows_b = [], []
    for mode in args.qr:
        for gt in _gamma_grid(args):
            d = 1.0 - np.exp(-gt)
            qr = d if mode == "optimal" else float(mode)
            z_corr = schemes.zeta_eam(d, qr, ZetaVariant.CORRECTED).zeta
            z_ap = schemes.zeta_eam(d, qr, ZetaVariant.AS_PRINTED).zeta
            prob = schemes.success_probability(SchemeKind.EAM, d, 0.0, qr)
            rows_a.append([_fmt(gt), mode, _fmt(z_corr), _fmt(z_ap)])
            rows_b.append([_fmt(gt), mode, _fmt(prob)])
    _write_csv(
        os.path.join(args.out, "fig4a.csv"),
        ["gamma_t", "qr_mode", "zeta3_corrected", "zeta3_as_printed"],
        rows_a,
    )
    _write_csv(
        os.path.join(args.out, "fig4b.csv"), ["gamma_t", "qr_mode", "P_eam"], rows_b
    )
    return 0


def cmd_fig5(args) -> int:
    variant = ZetaVariant(args.variant)
    rows = []
    for gt in _gamma_grid(args):
        d = 1.0 - np.exp(-gt)
        for p in args.p:
            delta = schemes.delta_comparison(d, p, variant)
            rows.append([_fmt(gt), _fmt(p), _fmt(delta)])
    _write_csv(
        os.path.join(args.out, "fig5.csv"), ["gamma_t", "p", "delta"], rows
    )
    return 0


# ---------------------------------------------------------------------------
# sweep table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetrologyReport:
    """First-principles metrology of one prepared resource."""

    qfim: metrology.Qfim2
    delta_ind: float
    delta_sim: float
    ratio_r: float
    coherence: float
    success_probability: float
    zeta: float


@dataclass(frozen=True)
class SweepRow:
    gamma_t: float
    d: float
    scheme: str
    strength_p: float
    strength_reversal: float
    zeta: float
    coherence: float
    delta_ind_published: float
    delta_sim_published: float
    delta_ind_numeric: float
    delta_sim_numeric: float
    ratio_numeric: float
    success_probability: float


def _point_report(
    resource: np.ndarray,
    success: float,
    zeta: float,
    in_state: InputState,
) -> MetrologyReport:
    balanced = InputState.balanced(*DEFAULT_PHI)
    g = coherence_factor(teleport(balanced, resource), balanced)

    def gen(f1: float, f2: float) -> np.ndarray:
        probe = InputState(
            in_state.alpha, in_state.beta, in_state.delta, f1, f2
        )
        return teleport(probe, resource)

    family = metrology.PhaseFamily(
        generator=gen, base_point=(in_state.phi1, in_state.phi2)
    )
    fim = metrology.qfim(family)
    rep = metrology.bounds(fim)
    return MetrologyReport(
        qfim=fim,
        delta_ind=rep.delta_ind,
        delta_sim=rep.delta_sim,
        ratio_r=rep.ratio_r,
        coherence=g,
        success_probability=success,
        zeta=zeta,
    )


def cmd_sweep(args) -> int:
    in_state = InputState(
        args.alpha, args.beta, args.delta, args.phi1, args.phi2
    )
    rows = []
    for gt in _gamma_grid(args):
        d = 1.0 - np.exp(-gt)
        noise = NoiseParams(d1=d, d2=d)
        entries: list[tuple[str, float, float, float, np.ndarray, float]] = []

        prep = prepare_plain(noise)
        entries.append(
            ("plain-ad", 0.0, 0.0, schemes.zeta_plain(d), prep.rho, 1.0)
        )
        for p in args.p:
            s_opt, z_opt = schemes.numeric_optimal_strength(SchemeKind.WM, d, p)
            ms = MeasurementStrengths(p=p, q=p, p_r=s_opt, q_r=s_opt)
            prep = prepare_wm(noise, ms)
            entries.append(
                ("wm", p, s_opt, z_opt, prep.rho, prep.success_probability)
            )
        s_opt, z_opt = schemes.numeric_optimal_strength(SchemeKind.EAM, d)
        ms = MeasurementStrengths(p_r=s_opt, q_r=s_opt)
        prep = prepare_eam(noise, ms)
        entries.append(
            ("eam", 0.0, s_opt, z_opt, prep.rho, prep.success_probability)
        )

        for scheme, p, s_rev, zeta, resource, success in entries:
            report = _point_report(resource, success, zeta, in_state)
            ind_pub, sim_pub = schemes.variance_bounds(zeta)
            row = SweepRow(
                gamma_t=gt,
                d=d,
                scheme=scheme,
                strength_p=p,
                strength_reversal=s_rev,
                zeta=zeta,
                coherence=report.coherence,
                delta_ind_published=ind_pub,
                delta_sim_published=sim_pub,
                delta_ind_numeric=report.delta_ind,
                delta_sim_numeric=report.delta_sim,
                ratio_numeric=report.ratio_r,
                success_probability=success,
            )
            rows.append(
                [
                    _fmt(row.gamma_t),
                    _fmt(row.d),
                    row.scheme,
                    _fmt(row.strength_p),
                    _fmt(row.strength_reversal),
                    _fmt(row.zeta),
                    _fmt(row.coherence),
                    _fmt(row.delta_ind_published),
                    _fmt(row.delta_sim_published),
                    _fmt(row.delta_ind_numeric),
                    _fmt(row.delta_sim_numeric),
                    _fmt(row.ratio_numeric),
                    _fmt(row.success_probability),
                ]
            )
    _write_csv(
        os.path.join(args.out, "sweep.csv"),
        [
            "gamma_t",
            "d",
            "scheme",
            "strength_p",
            "strength_reversal",
            "zeta",
            "coherence",
            "delta_ind_published",
            "delta_sim_published",
            "delta_ind_numeric",
            "delta_sim_numeric",
            "ratio_numeric",
            "success_probability",
        ],
        rows,
    )
    return 0


def cmd_verify(args) -> int:
    report = verify.run_verification()
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "verify.json")
    with open(path, "w", newline="") as fh:
        fh.write(report.to_json())
    for check in report.checks:
        label = check.status.upper()
        print(f"[{label}] {check.name}: measured={check.measured} "
              f"expected={check.expected} tolerance={check.tolerance}")
    counts = report.counts()
    print(
        f"{counts['pass']} passed, {counts['fail']} failed, "
        f"{counts['informational']} informational -> {path}"
    )
    return 0 if report.all_passed else 3


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutrit-teleport",
        description=(
            "Simulate qutrit teleportation through a decaying resource, "
            "emit scheme-comparison figure data, and verify every closed "
            "form against the density-matrix pipeline."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid(sp):
        sp.add_argument("--gamma-t-max", type=float, default=3.0,
                        help="upper end of the gamma*t grid (default 3.0)")
        sp.add_argument("--steps", type=int, default=61,
                        help="number of grid points (default 61)")

    def add_out(sp):
        sp.add_argument("--out", default="./out",
                        help="output directory (default ./out)")

    sp = sub.add_parser("fig2", help="baseline zeta vs gamma*t")
    add_grid(sp); add_out(sp)
    sp.set_defaults(func=cmd_fig2)

    sp = sub.add_parser("fig3", help="optimized weak-measurement scheme")
    add_grid(sp); add_out(sp)
    sp.add_argument("--p", type=float, action="append", default=None,
                    help="pre-measurement strength, repeatable "
                         "(default 0.3 0.5 0.7 0.9)")
    sp.set_defaults(func=cmd_fig3)

    sp = sub.add_parser("fig4", help="environment-assisted scheme")
    add_grid(sp); add_out(sp)
    sp.add_argument("--qr", action="append", default=None,
                    help="reversal strength or 'optimal', repeatable "
                         "(default 0 0.5 0.7 optimal)")
    sp.set_defaults(func=cmd_fig4)

    sp = sub.add_parser("fig5", help="scheme-advantage surface")
    add_grid(sp); add_out(sp)
    sp.add_argument("--p", type=float, action="append", default=None,
                    help="pre-measurement strength, repeatable "
                         "(default 0.3 0.5 0.7 0.9)")
    sp.add_argument("--variant", choices=[v.value for v in ZetaVariant],
                    default=ZetaVariant.CORRECTED.value,
                    help="zeta variant used in the optimization")
    sp.set_defaults(func=cmd_fig5)

    sp = sub.add_parser(
        "sweep", help="full per-scheme table with first-principles metrology"
    )
    add_grid(sp); add_out(sp)
    sp.add_argument("--p", type=float, action="append", default=None,
                    help="weak-measurement strength, repeatable (default 0.5)")
    sp.add_argument("--alpha", type=float, default=1 / np.sqrt(3))
    sp.add_argument("--beta", type=float, default=1 / np.sqrt(3))
    sp.add_argument("--delta", type=float, default=1 / np.sqrt(3))
    sp.add_argument("--phi1", type=float, default=DEFAULT_PHI[0])
    sp.add_argument("--phi2", type=float, default=DEFAULT_PHI[1])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the verification suite")
    add_out(sp)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate_common(parser, args)
    if args.command == "fig3" and args.p is None:
        args.p = list(DEFAULT_P)
    if args.command == "fig5" and args.p is None:
        args.p = list(DEFAULT_P)
    if args.command == "sweep" and args.p is None:
        args.p = [0.5]
    if args.command == "fig4":
        args.qr = _parse_qr_modes(parser, list(DEFAULT_QR) if args.qr is None else args.qr)
    if args.command == "sweep":
        try:
            InputState(args.alpha, args.beta, args.delta,
                                args.phi1, args.phi2)
        except ValueError as exc:
            parser.error(str(exc))
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
