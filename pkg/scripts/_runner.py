"""Shared plumbing for the reproduction scripts: drive the CLI, collect CSVs."""
from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from transeig.cli import detected_path, main as cli_main
from transeig.plotting import plot_series
from transeig.rim import log_peaks


def parser(description, outdir):
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--outdir", default=os.path.join("results", outdir))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--n", type=int, default=32)
    return p


def run(args):
    """Run one CLI invocation; abort the script if it fails."""
    print("transeig", " ".join(map(str, args)), flush=True)
    code = cli_main([str(a) for a in args])
    if code != 0:
        sys.exit(code)


def scan(outdir, tag, shape, a, b, n_sub, *extra, workers=1, n=32):
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, f"{tag}.csv")
    run(["scan", "--shape", shape, "--interval", a, b, "--subdivisions", n_sub,
         "--n", n, "--workers", workers, "--output", path, "--plot", *extra])
    return path


def read_scan(path):
    """``(kappa, log10 indicator)``; failed points are returned as NaN."""
    k, lg = [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            k.append(complex(float(row["kappa_re"]), float(row["kappa_im"])))
            v = row["log10_indicator"]
            lg.append(np.nan if v == "ERR" else float(v))
    return np.array(k), np.array(lg)


def read_detected(path):
    with open(detected_path(path), newline="") as fh:
        return [complex(float(r["kappa_re"]), float(r["kappa_im"])) for r in csv.DictReader(fh)]


def roundoff_peaks(path):
    """Diagnostic peaks of the indicator below the detection threshold.

    Real scans give the prominent local maxima of ``log10`` indicator,
    complex scans the grid point of largest indicator.
    """
    k, lg = read_scan(path)
    if np.all(k.imag == k.imag[0]):
        return log_peaks(k, 10.0 ** lg)
    return [k[np.nanargmax(lg)]]


def report(label, found, reference, tol, path=None):
    """Print each reference value with its nearest detection."""
    if path is not None:
        peaks = roundoff_peaks(path)
        print(f"{label}: sub-threshold peaks (diagnostic) "
              f"{[round(p.real, 4) if p.imag == 0 else complex(round(p.real, 4), round(p.imag, 4)) for p in peaks]}")
    found = [complex(f) for f in found]
    print(f"{label}: detected {[round(f.real, 4) if f.imag == 0 else complex(round(f.real, 4), round(f.imag, 4)) for f in found]}")
    for ref in reference:
        if not found:
            print(f"  {ref}: no detection")
            continue
        best = min(found, key=lambda f: abs(f - ref))
        err = abs(best - ref)
        print(f"  {ref}: nearest {best.real:.4f}{best.imag:+.4f}i  |err| = {err:.2e}  "
              f"{'ok' if err <= tol else 'MISS'}")


def overlay(path, curves, marks=()):
    series = [(label, read_scan(p)[0].real, read_scan(p)[1]) for label, p in curves]
    return plot_series(path, series, marks=marks)
