"""Data for the three published figure families, plus a plotting script.

Frequencies are in units of omega0 (omega0 = 1).  Spectra are sampled on 301
points over [0, 1.5]; the rate sweep uses 300 points over (0, 30].
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import FrequencyGrid, Method, PhysicalParams, ThermalConvention
from .quadrature import QuadratureConfig
from .spectra import spectrum_total
from .tables import RATE_COLUMNS, SPECTRUM_COLUMNS, _common_meta, rate_rows, render, write_text

SPECTRUM_TEMPERATURES = (0.0, 0.02, 0.05, 0.07, 0.1)
RATE_TEMPERATURES = (0.0, 0.1)
SPECTRUM_GRID = "0:1.5:301"
RATE_SWEEP = (0.0, 30.0, 300)  # excludes omega0 = 0 itself


@dataclass(frozen=True)
class SpectrumFigure:
    name: str
    gamma0: float
    factor: float


SPECTRUM_FIGURES = (
    SpectrumFigure("fig1", 1.0, 1.0),
    SpectrumFigure("fig2a", 5.0, 20.0),
    SpectrumFigure("fig2b", 10.0, 100.0),
)

FIGURE_FILES = ("fig1.csv", "fig2a.csv", "fig2b.csv", "fig3.csv", "plot_figures.py")


def rate_sweep() -> np.ndarray:
    start, stop, count = RATE_SWEEP
    return np.linspace(start, stop, count + 1)[1:]


def spectrum_figure_csv(fig: SpectrumFigure, conv=ThermalConvention.SELF_CONSISTENT,
                        epsilon0: float = 0.01, tau: float = 100.0, rel_tol: float = 1e-10) -> str:
    grid = FrequencyGrid.parse(SPECTRUM_GRID)
    base = PhysicalParams(gamma0=fig.gamma0, epsilon0=epsilon0, omega0=1.0, tau=tau)
    meta = _common_meta(base, conv, Method.CLOSED_FORM, rel_tol, "figures")
    meta += [("figure", fig.name), ("grid", SPECTRUM_GRID), ("factor", fig.factor),
             ("temperatures", ",".join(repr(t) for t in SPECTRUM_TEMPERATURES))]
    rows = []
    for T in SPECTRUM_TEMPERATURES:
        res = spectrum_total(grid, base.replace(temperature=T), conv)
        for w, v, th, tot in zip(grid.points, res.vacuum, res.thermal, res.total):
            rows.append((w, w, v, th, tot, T, fig.factor * tot))
    return render(meta, SPECTRUM_COLUMNS + ("temperature", "plotted"), rows)


def rate_figure_csv(conv=ThermalConvention.SELF_CONSISTENT, epsilon0: float = 0.01,
                    tau: float = 100.0, rel_tol: float = 1e-10) -> str:
    base = PhysicalParams(gamma0=1.0, epsilon0=epsilon0, omega0=1.0, tau=tau)
    cfg = QuadratureConfig(rel_tol=rel_tol)
    meta = _common_meta(base, conv, Method.CLOSED_FORM, rel_tol, "figures")
    start, stop, count = RATE_SWEEP
    meta += [("figure", "fig3"), ("omega0_sweep", f"({start!r}:{stop!r}]:{count}"),
             ("temperatures", ",".join(repr(t) for t in RATE_TEMPERATURES)),
             ("note", "small omega0 violates omega0*tau>>1 (not-narrowband)")]
    rows = rate_rows(base, rate_sweep(), RATE_TEMPERATURES, conv, Method.CLOSED_FORM, cfg)
    return render(meta, RATE_COLUMNS, rows)


PLOT_SCRIPT = '''\
"""Redraw the spectrum and rate figures from the CSV files in this directory.

Usage: python plot_figures.py [directory]
"""
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

# solid, long-dashed, short-dashed, dotted, dash-dotted
STYLES = {
    0.0: dict(linestyle="-"),
    0.02: dict(dashes=(10, 4)),
    0.05: dict(dashes=(4, 3)),
    0.07: dict(linestyle=":"),
    0.1: dict(linestyle="-."),
}
RATE_STYLES = {0.0: dict(linestyle="-"), 0.1: dict(linestyle="--")}


def load(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(rows))


def curves(rows, x, y):
    out = {}
    for row in rows:
        out.setdefault(float(row["temperature"]), ([], []))
        out[float(row["temperature"])][0].append(float(row[x]))
        out[float(row["temperature"])][1].append(float(row[y]))
    return out


def main(directory="."):
    directory = Path(directory)
    for name, ylabel in [
        ("fig1", "(2pi/eps0^2 tau) dN/dw"),
        ("fig2a", "20 x (2pi/eps0^2 tau) dN/dw"),
        ("fig2b", "100 x (2pi/eps0^2 tau) dN/dw"),
    ]:
        fig, ax = plt.subplots()
        for T, (xs, ys) in curves(load(directory / f"{name}.csv"), "omega_over_omega0", "plotted").items():
            ax.plot(xs, ys, color="k", label=f"T = {T:g}", **STYLES.get(T, {}))
        ax.set_xlabel("w / w0")
        ax.set_ylabel(ylabel)
        ax.legend()
        fig.savefig(directory / f"{name}.png", dpi=150)
        plt.close(fig)

    fig, ax = plt.subplots()
    for T, (xs, ys) in curves(load(directory / "fig3.csv"), "omega0", "rate_total").items():
        ax.plot(xs, ys, color="k", label=f"T = {T:g}", **RATE_STYLES.get(T, {}))
    ax.set_xlabel("w0")
    ax.set_ylabel("(2pi/eps0^2) R")
    ax.legend()
    fig.savefig(directory / "fig3.png", dpi=150)
    plt.close(fig)


if __name__ == "__main__":
    main(*sys.argv[1:])
'''


def write_figures(outdir, conv=ThermalConvention.SELF_CONSISTENT, epsilon0: float = 0.01,
                  tau: float = 100.0, rel_tol: float = 1e-10) -> list[Path]:
    """Compute all figure data first, then write the files in a fixed order."""
    outdir = Path(outdir)
    texts = [spectrum_figure_csv(f, conv, epsilon0, tau, rel_tol) for f in SPECTRUM_FIGURES]
    texts.append(rate_figure_csv(conv, epsilon0, tau, rel_tol))
    texts.append(PLOT_SCRIPT)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in zip(FIGURE_FILES, texts):
        path = outdir / name
        write_text(path, text)
        paths.append(path)
    return paths
