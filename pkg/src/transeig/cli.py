"""Command line scanner: ``scan``, ``scan-complex`` and ``disk-oracle``.

Settings come from built-in defaults, then an optional ``--config`` file of
flat ``key = value`` lines, then the command line flags (which win).
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, fields

import numpy as np

from . import disk as disk_oracle
from .geometry import SHAPES, GeometryError, build_mesh, make_shape
from .rim import MAX_RADIUS, RimConfig, scan_complex_grid, scan_interval

log = logging.getLogger("transeig")

SCAN_HEADER = "kappa_re,kappa_im,indicator,log10_indicator,eta_used,condition_estimate"
ERR = "ERR"


class ConfigError(ValueError):
    pass


@dataclass
class ScanConfig:
    shape: str = "disk"
    mu: float = 16.0
    interval: tuple = (1.6, 2.2)
    subdivisions: int = 100
    n: int = 32
    m: int = 64
    radius: float = 1e-3
    eta: object = "auto"
    grading: float = 3.0
    seed: int = 0
    window: tuple | None = None
    output: str | None = None
    workers: int = 1
    disk_radius: float = 0.5
    m_max: int = 8
    plot: bool = False

    def validate(self, command):
        if self.shape not in SHAPES:
            raise ConfigError(f"--shape: unknown shape {self.shape!r}; choose from {', '.join(SHAPES)}")
        if not self.mu > 1:
            raise ConfigError("--mu: refractive index must exceed 1")
        a, b = self.interval
        if not a < b:
            raise ConfigError("--interval: need A < B")
        if command == "scan" and not a > 0:
            raise ConfigError("--interval: wavenumbers must be positive")
        if self.subdivisions < 1:
            raise ConfigError("--subdivisions: need N >= 1")
        if self.n < 4:
            raise ConfigError("--n: need n >= 4")
        if self.m < 1:
            raise ConfigError("--m: need m >= 1")
        if not 0 < self.radius <= MAX_RADIUS:
            raise ConfigError(f"--radius: contour radius must lie in (0, {MAX_RADIUS}]")
        if self.eta != "auto" and not 0 <= self.eta < 1:
            raise ConfigError("--eta: need 0 <= eta < 1 or 'auto'")
        if self.grading < 2:
            raise ConfigError("--grading: need p >= 2")
        if self.workers < 1:
            raise ConfigError("--workers: need K >= 1")
        if command == "scan-complex":
            if self.window is None:
                raise ConfigError("--window is required for scan-complex")
            rea, reb, ima, imb, nre, nim = self.window
            if not (rea < reb and ima < imb and nre >= 1 and nim >= 1):
                raise ConfigError("--window: need REA < REB, IMA < IMB, NRE >= 1, NIM >= 1")
        if command in ("scan", "scan-complex") and not self.output:
            raise ConfigError("--output is required")
        if command == "disk-oracle":
            if not self.disk_radius > 0:
                raise ConfigError("--disk-radius must be positive")
            if not 0 <= self.m_max <= disk_oracle.MAX_ORDER:
                raise ConfigError(f"--m-max must lie in [0, {disk_oracle.MAX_ORDER}]")
        return self


def _eta(text):
    if str(text).strip().lower() == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a number, got {text!r}") from None


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


# key -> (parser for one config-file value string)
_FILE_KEYS = {
    "shape": str,
    "mu": float,
    "interval": lambda s: tuple(float(x) for x in _split(s, 2)),
    "subdivisions": int,
    "n": int,
    "m": int,
    "radius": float,
    "eta": _eta,
    "grading": float,
    "seed": int,
    "window": lambda s: tuple(float(x) if i < 4 else int(x) for i, x in enumerate(_split(s, 6))),
    "output": str,
    "workers": int,
    "disk_radius": float,
    "m_max": int,
    "plot": _bool,
}


def _split(text, count):
    parts = text.replace(",", " ").split()
    if len(parts) != count:
        raise ValueError(f"expected {count} values, got {len(parts)}")
    return parts


def read_config_file(path):
    """Parse ``key = value`` lines; ``#`` starts a comment, dashes equal underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (p.strip() for p in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _FILE_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _FILE_KEYS[key](value)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from None
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="transeig",
        description="Scan for interior transmission eigenvalues with the recursive integral method.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    S = argparse.SUPPRESS

    def common(p):
        p.add_argument("--config", metavar="FILE", help="flat 'key = value' settings file")
        p.add_argument("-v", "--verbose", action="store_true", default=S, help="log progress")
        p.add_argument("--mu", type=float, default=S, help="refractive index (default 16)")
        p.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"), default=S)
        p.add_argument("--output", metavar="PATH", default=S)

    def scanning(p):
        p.add_argument("--shape", choices=SHAPES, default=S)
        p.add_argument("--subdivisions", type=int, metavar="N", default=S)
        p.add_argument("--n", type=int, default=S, help="half the number of boundary nodes")
        p.add_argument("--m", type=int, default=S, help="half the number of contour nodes")
        p.add_argument("--radius", type=float, default=S, help="contour radius r")
        p.add_argument("--eta", type=_eta, default=S, help="'auto' or a Tikhonov parameter")
        p.add_argument("--grading", type=float, default=S, help="corner grading exponent p")
        p.add_argument("--seed", type=int, default=S, help="probe vector seed")
        p.add_argument("--workers", type=int, metavar="K", default=S)
        p.add_argument("--plot", action="store_true", default=S,
                       help="also render a PNG of the indicator next to the CSV")

    p = sub.add_parser("scan", help="indicator on a uniform grid of real wavenumbers")
    common(p)
    scanning(p)
    p = sub.add_parser("scan-complex", help="indicator on a tensor grid in the complex plane")
    common(p)
    scanning(p)
    p.add_argument("--window", nargs=6, metavar=("REA", "REB", "IMA", "IMB", "NRE", "NIM"),
                   default=S)
    p = sub.add_parser("disk-oracle", help="exact disk eigenvalues as CSV 'kappa,order'")
    common(p)
    p.add_argument("--disk-radius", type=float, default=S, help="disk radius R (default 0.5)")
    p.add_argument("--m-max", type=int, default=S, help="largest Bessel order (default 8)")
    return parser


def parse_config(argv):
    """Return ``(command, ScanConfig, verbose)``; raises ``SystemExit(2)`` on usage errors."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        raise SystemExit(2)
    values = {}
    verbose = bool(getattr(args, "verbose", False))
    try:
        if getattr(args, "config", None):
            values.update(read_config_file(args.config))
        flags = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
        if "window" in flags:
            w = flags["window"]
            try:
                flags["window"] = tuple(float(x) for x in w[:4]) + tuple(int(x) for x in w[4:])
            except ValueError:
                raise ConfigError("--window: REA REB IMA IMB must be numbers, NRE NIM integers") from None
        if "interval" in flags:
            flags["interval"] = tuple(flags["interval"])
        values.update(flags)
        known = {f.name for f in fields(ScanConfig)}
        cfg = ScanConfig(**{k: v for k, v in values.items() if k in known})
        if args.command == "disk-oracle" and "interval" not in values:
            cfg.interval = (1.5, 5.0)
        cfg.validate(args.command)
    except (ConfigError, OSError) as exc:
        parser.error(str(exc))
    return args.command, cfg, verbose


def fmt(x):
    """17 significant digits, so reruns can be compared byte for byte."""
    return format(float(x), ".17g")


def scan_rows(samples):
    for s in samples:
        k = complex(s.kappa)
        if s.error is not None or not np.isfinite(s.indicator):
            ind = lg = ERR
        else:
            ind = fmt(s.indicator)
            lg = fmt(np.log10(s.indicator)) if s.indicator > 0 else "-inf"
        yield ",".join([fmt(k.real), fmt(k.imag), ind, lg, fmt(s.eta), fmt(s.condition)])


def write_scan(path, result):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SCAN_HEADER + "\n")
        for row in scan_rows(result.samples):
            fh.write(row + "\n")
    with open(detected_path(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("kappa_re,kappa_im\n")
        for k in result.detected:
            fh.write(f"{fmt(k.real)},{fmt(k.imag)}\n")


def detected_path(path):
    return f"{path}.detected.csv"


def run(command, cfg):
    """Execute one subcommand; returns the process exit code."""
    t0 = time.perf_counter()
    if command == "disk-oracle":
        roots = disk_oracle.find_roots(cfg.m_max, cfg.interval, cfg.mu, cfg.disk_radius)
        lines = ["kappa,order"] + [f"{fmt(k)},{m}" for k, m in roots]
        text = "\n".join(lines) + "\n"
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        log.info("%d roots in %.2f s", len(roots), time.perf_counter() - t0)
        return 0
    mesh = build_mesh(make_shape(cfg.shape, cfg.grading), cfg.n)
    rim = RimConfig(cfg.m, cfg.radius, cfg.seed)
    if command == "scan":
        a, b = cfg.interval
        result = scan_interval(a, b, cfg.subdivisions, cfg.mu, cfg.eta, mesh, rim, cfg.workers)
    else:
        rea, reb, ima, imb, nre, nim = cfg.window
        result = scan_complex_grid((rea, reb), (ima, imb), nre, nim, cfg.mu, cfg.eta,
                                   mesh, rim, cfg.workers)
    write_scan(cfg.output, result)
    failed = sum(s.error is not None for s in result.samples)
    log.info("%d points (%d failed), %d detections in %.1f s", len(result.samples), failed,
             len(result.detected), time.perf_counter() - t0)
    if cfg.plot:
        from .plotting import plot_scan
        plot_scan(cfg.output, command, result)
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    command, cfg, verbose = parse_config(argv)
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return run(command, cfg)
    except (GeometryError, OSError, ValueError) as exc:
        print(f"transeig: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
