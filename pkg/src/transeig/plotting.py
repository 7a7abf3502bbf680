"""Thin matplotlib companion: renders scan results next to their CSV files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _log_indicator(result):
    v = np.array([s.indicator for s in result.samples], float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = np.log10(v)
    # zero indicators and failed points are drawn at the double precision floor
    return np.where(np.isfinite(lg), lg, -17.0)


def plot_scan(csv_path, command, result, marks=()):
    """Write ``<csv_path>.png`` and return its path.

    Real scans give ``log10`` indicator against ``kappa``; complex scans a
    colour map over the window.  ``marks`` are reference values drawn as
    vertical lines (real scans) or crosses (complex scans).
    """
    lg = _log_indicator(result)
    k = result.kappas
    fig, ax = plt.subplots(figsize=(6.0, 3.6), constrained_layout=True)
    if command == "scan":
        ax.plot(k.real, lg, "-", lw=0.9, color="C0")
        for x in marks:
            ax.axvline(float(np.real(x)), color="0.6", lw=0.6, ls="--")
        for d in result.detected:
            ax.plot(d.real, 0.0, "v", color="C3", ms=6)
        ax.set_xlabel(r"$\kappa$")
        ax.set_ylabel(r"$\log_{10}$ indicator")
    else:
        re = np.unique(k.real)
        im = np.unique(k.imag)
        grid = lg.reshape(len(re), len(im)).T
        mesh = ax.pcolormesh(re, im, grid, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=r"$\log_{10}$ indicator")
        for x in marks:
            ax.plot(np.real(x), np.imag(x), "x", color="w", ms=7)
        for d in result.detected:
            ax.plot(d.real, d.imag, "o", mfc="none", color="C3", ms=8)
        ax.set_xlabel(r"Re $\kappa$")
        ax.set_ylabel(r"Im $\kappa$")
    out = f"{csv_path}.png"
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def plot_series(path, series, xlabel=r"$\kappa$", ylabel=r"$\log_{10}$ indicator", marks=()):
    """Overlay several ``(label, x, log10 values)`` curves in one figure."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6), constrained_layout=True)
    for label, x, y in series:
        ax.plot(x, y, lw=0.9, label=label)
    for x in marks:
        ax.axvline(x, color="0.6", lw=0.6, ls="--")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
