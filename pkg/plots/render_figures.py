"""Render the scheme-comparison figures from the simulator's CSV output.

Consumes the six files the ``qutrit-teleport`` CLI writes (fig2.csv,
fig3a.csv, fig3b.csv, fig4a.csv, fig4b.csv, fig5.csv), checks every
header against the documented schema, and draws four PNG images:

    fig2.png  baseline zeta vs gamma*t (log y)
    fig3.png  optimized weak-measurement scheme, panels (a) zeta (b) P
    fig4.png  environment-assisted scheme, panels (a) zeta, log y (b) P
    fig5.png  scheme-advantage surface Delta over (gamma*t, p)

Nothing is recomputed here; the script only groups, pivots and plots.
Rendering is a pure function of the CSV bytes: fixed figure size, fixed
dpi, bundled mathtext fonts, no timestamps in the PNG metadata.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SCHEMAS = {
    "fig2.csv": ["gamma_t", "d", "zeta1"],
    "fig3a.csv": [
        "gamma_t", "p", "zeta2_opt", "strength_opt_numeric",
        "strength_opt_published", "published_in_range",
    ],
    "fig3b.csv": ["gamma_t", "p", "P_wm_opt"],
    "fig4a.csv": ["gamma_t", "qr_mode", "zeta3_corrected", "zeta3_as_printed"],
    "fig4b.csv": ["gamma_t", "qr_mode", "P_eam"],
    "fig5.csv": ["gamma_t", "p", "delta"],
}

AXIS_LABELS = {
    "gamma_t": r"$\gamma t$",
    "p": r"$p$",
    "zeta1": r"$\zeta_1$",
    "zeta2_opt": r"$\zeta_2^{\mathrm{opt}}$",
    "zeta3_corrected": r"$\zeta_3$",
    "P_wm_opt": r"$P_{\mathrm{WM}}^{\mathrm{opt}}$",
    "P_eam": r"$P_{\mathrm{EAM}}$",
    "delta": r"$\Delta$",
}


class SchemaError(Exception):
    """An input CSV is missing or its header deviates from the schema."""


@dataclass(frozen=True)
class PanelSpec:
    csv_name: str
    x: str
    y: str
    group: str | None = None  # series grouping column; None = single line
    label_prefix: str = ""
    logy: bool = False
    heatmap: bool = False
    value: str | None = None  # color column, heatmap only


@dataclass(frozen=True)
class FigureSpec:
    image_name: str
    panels: tuple[PanelSpec, ...]


FIGURES = (
    FigureSpec("fig2.png", (
        PanelSpec("fig2.csv", x="gamma_t", y="zeta1", logy=True),
    )),
    FigureSpec("fig3.png", (
        PanelSpec("fig3a.csv", x="gamma_t", y="zeta2_opt", group="p",
                  label_prefix="p = "),
        PanelSpec("fig3b.csv", x="gamma_t", y="P_wm_opt", group="p",
                  label_prefix="p = "),
    )),
    FigureSpec("fig4.png", (
        PanelSpec("fig4a.csv", x="gamma_t", y="zeta3_corrected",
                  group="qr_mode", label_prefix="$q_r$ = ", logy=True),
        PanelSpec("fig4b.csv", x="gamma_t", y="P_eam",
                  group="qr_mode", label_prefix="$q_r$ = "),
    )),
    FigureSpec("fig5.png", (
        PanelSpec("fig5.csv", x="gamma_t", y="p", heatmap=True,
                  value="delta"),
    )),
)


def validate_inputs(in_dir: str) -> None:
    """Check that every expected CSV exists with exactly its schema
    header. All problems are collected before raising so one run names
    everything that is wrong."""
    problems = []
    for name, columns in sorted(SCHEMAS.items()):
        path = os.path.join(in_dir, name)
        if not os.path.exists(path):
            problems.append(
                f"missing {name} (expected header: {','.join(columns)})"
            )
            continue
        with open(path, newline="") as fh:
            header = next(csv.reader(fh), None)
        if header != columns:
            found = ",".join(header) if header else "<empty file>"
            problems.append(
                f"{name}: header mismatch\n"
                f"  expected: {','.join(columns)}\n"
                f"  found:    {found}"
            )
    if problems:
        raise SchemaError("\n".join(problems))


def load_csv(in_dir: str, name: str) -> list[dict]:
    with open(os.path.join(in_dir, name), newline="") as fh:
        return list(csv.DictReader(fh))


def _series(rows: list[dict], group: str) -> dict[str, list[dict]]:
    out: dict[str, list[dict]] = {}
    for row in rows:
        out.setdefault(row[group], []).append(row)
    return out


def _unique_in_order(values) -> list:
    seen, out = set(), []
    for v in values:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _edges(coords) -> np.ndarray:
    """Cell edges bracketing the given 1d coordinates; handles
    non-uniform spacing and a single coordinate."""
    c = np.asarray(coords, dtype=float)
    if c.size == 1:
        return np.array([c[0] - 0.5, c[0] + 0.5])
    mid = (c[1:] + c[:-1]) / 2.0
    first = c[0] - (c[1] - c[0]) / 2.0
    last = c[-1] + (c[-1] - c[-2]) / 2.0
    return np.concatenate(([first], mid, [last]))


def _draw_lines(ax, rows: list[dict], panel: PanelSpec) -> None:
    if panel.group is None:
        xs = np.array([float(r[panel.x]) for r in rows])
        ys = np.array([float(r[panel.y]) for r in rows])
        ax.plot(xs, ys, lw=1.6)
    else:
        for key, grp in _series(rows, panel.group).items():
            xs = np.array([float(r[panel.x]) for r in grp])
            ys = np.array([float(r[panel.y]) for r in grp])
            ax.plot(xs, ys, lw=1.6, label=f"{panel.label_prefix}{key}")
        ax.legend(frameon=False, fontsize=8)
    if panel.logy:
        ax.set_yscale("log")
    ax.set_xlabel(AXIS_LABELS.get(panel.x, panel.x))
    ax.set_ylabel(AXIS_LABELS.get(panel.y, panel.y))


def _draw_heatmap(fig, ax, rows: list[dict], panel: PanelSpec) -> None:
    # pivot on the raw strings so grid order is exactly file order
    xs = _unique_in_order(r[panel.x] for r in rows)
    ys = _unique_in_order(r[panel.y] for r in rows)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    grid = np.full((len(ys), len(xs)), np.nan)
    for r in rows:
        grid[yi[r[panel.y]], xi[r[panel.x]]] = float(r[panel.value])
    mesh = ax.pcolormesh(
        _edges([float(v) for v in xs]),
        _edges([float(v) for v in ys]),
        grid, shading="flat", cmap="viridis",
    )
    fig.colorbar(mesh, ax=ax, label=AXIS_LABELS.get(panel.value, panel.value))
    ax.set_xlabel(AXIS_LABELS.get(panel.x, panel.x))
    ax.set_ylabel(AXIS_LABELS.get(panel.y, panel.y))


def render_all(in_dir: str, out_dir: str) -> list[str]:
    """Validate every input CSV, then draw the four figures into
    ``out_dir``. Returns the written image paths in figure order."""
    validate_inputs(in_dir)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for spec in FIGURES:
        n = len(spec.panels)
        fig, axes = plt.subplots(1, n, figsize=(5.2 * n, 3.6), dpi=150)
        for ax, panel, tag in zip(np.atleast_1d(axes), spec.panels, "ab"):
            rows = load_csv(in_dir, panel.csv_name)
            if panel.heatmap:
                _draw_heatmap(fig, ax, rows, panel)
            else:
                _draw_lines(ax, rows, panel)
            if n > 1:
                ax.set_title(f"({tag})", fontsize=10)
        fig.tight_layout()
        path = os.path.join(out_dir, spec.image_name)
        # Software key would otherwise embed the matplotlib version
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
        written.append(path)
    return written


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        description="render fig2..fig5 PNG images from the simulator's "
                    "CSV files"
    )
    ap.add_argument("--in", dest="in_dir", required=True,
                    help="directory holding the CSV files")
    ap.add_argument("--out", dest="out_dir", required=True,
                    help="directory the images are written into")
    args = ap.parse_args(argv)
    try:
        written = render_all(args.in_dir, args.out_dir)
    except SchemaError as exc:
        print(f"input validation failed:\n{exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
