"""Regularised Schur complement and the recursive integral method (RIM).

For a wavenumber ``kappa`` the Neumann density is eliminated from the
block system, leaving the ``2n x 2n`` matrix ``A(kappa)``.  ``kappa`` is a
transmission eigenvalue exactly when ``A(kappa)`` is singular, which the
RIM indicator detects without computing any eigenvalue: it applies the
trapezoid-rule Riesz projection for a small circle around the origin
twice to a random probe and measures what survives.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .nystrom import layer_matrices

log = logging.getLogger(__name__)

DETECTION_THRESHOLD = 0.5
AUTO_COND_LIMIT = 1e8
AUTO_ETA = 1e-5
MAX_RADIUS = 0.05
REFINE_STEPS = 12


class RegularizationRequired(linalg.SingularMatrixError):
    def __init__(self, condition):
        super().__init__(f"inner single layer matrix is singular (condition estimate "
                         f"{condition:.3g}); use eta > 0")
        self.condition = condition


class ContourHitError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True, eq=False)
class SchurOperator:
    matrix: np.ndarray
    kappa: complex
    eta: float
    regularized: bool
    condition: float


@dataclass(frozen=True)
class RimConfig:
    """Contour quadrature settings: ``2m`` nodes on ``|z| = radius``."""

    m: int = 64
    radius: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if not 0 < self.radius <= MAX_RADIUS:
            raise ValueError(f"contour radius must lie in (0, {MAX_RADIUS}]")

    def probe(self, size):
        """Complex standard normal probe vector; depends only on seed and size."""
        rng = np.random.default_rng(self.seed)
        return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def schur_operator(kappa, mu, eta, mesh):
    """``A^eta(kappa)`` on ``mesh`` with inner wavenumber ``kappa sqrt(mu)``.

    ``eta`` may be a float >= 0 or ``"auto"``: zero unless the condition
    estimate of the inner single layer matrix exceeds ``AUTO_COND_LIMIT``,
    in which case ``AUTO_ETA`` is used.
    """
    if not mu > 1:
        raise ValueError("refractive index must exceed 1")
    kappa = complex(kappa)
    s, d = layer_matrices(kappa, mesh)
    s1, d1 = layer_matrices(kappa * np.sqrt(mu), mesh)
    size = mesh.size
    half = 0.5 * np.eye(size)
    b = half + d1
    fac = linalg.lu_factor(s1)
    cond = linalg.condition_estimate(fac, s1)
    if eta == "auto":
        eta = AUTO_ETA if cond > AUTO_COND_LIMIT else 0.0
    eta = float(eta)
    if eta < 0:
        raise ValueError("eta must be non-negative")
    if eta == 0.0:
        if fac.singular:
            raise RegularizationRequired(cond)
        x = linalg.lu_solve(fac, b)
    else:
        s1h = linalg.conj_transpose(s1)
        normal = eta * np.eye(size) + linalg.matmul(s1h, s1)
        nfac = linalg.lu_factor(normal)
        x = linalg.lu_solve(nfac, linalg.matmul(s1h, b))
    a = half + d - linalg.matmul(s, x)
    return SchurOperator(a, kappa, eta, eta > 0.0, cond)


def _matrix(a):
    return a.matrix if isinstance(a, SchurOperator) else np.asarray(a, complex)


def contour_nodes(cfg):
    theta = np.pi * np.arange(2 * cfg.m) / cfg.m
    return cfg.radius * np.exp(1j * theta)


class Resolvent:
    """LU factors of ``z_j I - A`` for every contour node, reusable across solves."""

    def __init__(self, a, cfg):
        a = _matrix(a)
        self.cfg = cfg
        self.nodes = contour_nodes(cfg)
        eye = np.eye(a.shape[0])
        self._facs = []
        for z in self.nodes:
            fac = linalg.lu_factor(z * eye - a)
            if fac.singular:
                raise ContourHitError("an eigenvalue lies on the contour; perturb the radius")
            self._facs.append(fac)

    def project(self, f):
        """Trapezoid approximation of the Riesz projection applied to ``f``."""
        f = np.asarray(f, complex)
        out = np.zeros_like(f)
        for z, fac in zip(self.nodes, self._facs):
            out += z * linalg.lu_solve(fac, f)
        out /= 2 * self.cfg.m
        if not np.all(np.isfinite(out)):
            raise ContourHitError("resolvent overflow on the contour; perturb the radius")
        return out


def spectral_projection_apply(a, cfg, f):
    """Trapezoid approximation of the Riesz projection applied to ``f``."""
    return Resolvent(a, cfg).project(f)


def rim_indicator(a, cfg, f=None):
    """``|| P (P f / ||P f||) ||``: close to 1 if an eigenvalue lies inside the contour."""
    a = _matrix(a)
    if f is None:
        f = cfg.probe(a.shape[0])
    res = Resolvent(a, cfg)
    pf = res.project(f)
    nrm = np.linalg.norm(pf)
    if not nrm > np.finfo(float).tiny:
        return 0.0
    return float(np.linalg.norm(res.project(pf / nrm)))


@dataclass
class Sample:
    kappa: complex
    indicator: float
    eta: float = float("nan")
    condition: float = float("nan")
    error: str | None = None


@dataclass
class ScanResult:
    samples: list = field(default_factory=list)
    detected: list = field(default_factory=list)

    @property
    def kappas(self):
        return np.array([s.kappa for s in self.samples])

    @property
    def indicators(self):
        return np.array([s.indicator for s in self.samples])


def evaluate_point(kappa, mu, eta, mesh, cfg):
    """RIM indicator at one wavenumber; numerical failures are captured in the sample."""
    try:
        op = schur_operator(kappa, mu, eta, mesh)
        ind = rim_indicator(op, cfg)
    except (np.linalg.LinAlgError, ValueError) as exc:
        log.warning("kappa=%s: %s", kappa, exc)
        return Sample(complex(kappa), float("nan"), error=str(exc))
    return Sample(complex(kappa), ind, op.eta, op.condition)


def _eval_star(args):
    return evaluate_point(*args)


def evaluate_many(kappas, mu, eta, mesh, cfg, workers=1):
    """Indicator samples in input order; the result does not depend on ``workers``."""
    jobs = [(k, mu, eta, mesh, cfg) for k in kappas]
    if workers <= 1 or len(jobs) < 2:
        return [_eval_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _crossing(lo, hi, inside_at_hi, f):
    """Bisect for the threshold crossing of ``f`` between ``lo`` and ``hi``."""
    for _ in range(REFINE_STEPS):
        mid = 0.5 * (lo + hi)
        inside = f(mid) >= DETECTION_THRESHOLD
        if inside == inside_at_hi:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _detect_interval(grid, values, refine):
    """Eigenvalue estimates from runs of samples above the threshold.

    Each run is one plateau of the indicator.  Its two edges (where the
    nearest operator eigenvalue crosses the contour) are located by
    bisection against the neighbouring sub-threshold samples and the
    estimate is their midpoint.
    """
    above = np.nan_to_num(values, nan=0.0) >= DETECTION_THRESHOLD
    found = []
    i = 0
    n = len(grid)
    while i < n:
        if not above[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and above[j + 1]:
            j += 1
        left = grid[i] if i == 0 else _crossing(grid[i - 1], grid[i], True, refine)
        right = grid[j] if j == n - 1 else _crossing(grid[j + 1], grid[j], True, refine)
        found.append(0.5 * (left + right))
        i = j + 1
    return found


def scan_interval(a, b, N, mu, eta, mesh, cfg, workers=1, refine=True):
    """Indicator on ``N + 1`` equispaced wavenumbers of ``[a, b]`` plus detections."""
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if N < 1:
        raise ValueError("need at least one subinterval")
    grid = np.linspace(a, b, N + 1)
    samples = evaluate_many(grid, mu, eta, mesh, cfg, workers)
    values = np.array([s.indicator for s in samples])

    def f(k):
        s = evaluate_point(k, mu, eta, mesh, cfg)
        return 0.0 if np.isnan(s.indicator) else s.indicator

    if refine:
        detected = _detect_interval(grid, values, f)
    else:
        detected = _detect_interval(grid, values, lambda k: 0.0)
    return ScanResult(samples, [complex(k) for k in detected])


def _detect_grid(re, im, values):
    """Grid-local maxima above the threshold (8-neighbourhood)."""
    v = np.nan_to_num(values, nan=0.0)
    padded = np.pad(v, 1, constant_values=-np.inf)
    found = []
    for p in range(v.shape[0]):
        for q in range(v.shape[1]):
            c = v[p, q]
            if c < DETECTION_THRESHOLD:
                continue
            nb = padded[p:p + 3, q:q + 3]
            if c >= nb.max():
                found.append((p, q))
    # plateaus give several equal maxima; keep one per connected cluster
    clusters = []
    for p, q in found:
        for cl in clusters:
            if any(abs(p - a) <= 1 and abs(q - b) <= 1 for a, b in cl):
                cl.append((p, q))
                break
        else:
            clusters.append([(p, q)])
    out = []
    for cl in clusters:
        pts = np.array(cl, float)
        p, q = pts.mean(axis=0)
        out.append(complex(np.interp(p, np.arange(len(re)), re),
                           np.interp(q, np.arange(len(im)), im)))
    return out


def log_peaks(kappas, values, prominence=1.0):
    """Local maxima of ``log10`` indicator standing ``prominence`` decades above their surroundings.

    A diagnostic only, not a detection rule: when the indicator plateau is
    narrower than the grid step, the sampled values stay at roundoff level
    but the roundoff floor still rises near an eigenvalue, because it scales
    with the resolvent norm on the contour.
    """
    from scipy.signal import find_peaks

    v = np.nan_to_num(np.asarray(values, float), nan=0.0)
    with np.errstate(divide="ignore"):
        lg = np.log10(np.maximum(v, np.finfo(float).tiny))
    idx, _ = find_peaks(lg, prominence=prominence)
    return [complex(np.asarray(kappas)[i]) for i in idx]


def scan_complex_grid(re_range, im_range, n_re, n_im, mu, eta, mesh, cfg, workers=1):
    """Indicator on the tensor grid of ``(n_re + 1) x (n_im + 1)`` complex wavenumbers.

    Samples are ordered with the real part varying slowest.
    """
    re = np.linspace(re_range[0], re_range[1], n_re + 1)
    im = np.linspace(im_range[0], im_range[1], n_im + 1)
    if re[0] <= 0 and np.any(im == 0):
        raise ValueError("grid touches the cut (-inf, 0]")
    kappas = (re[:, None] + 1j * im[None, :]).ravel()
    samples = evaluate_many(kappas, mu, eta, mesh, cfg, workers)
    values = np.array([s.indicator for s in samples]).reshape(len(re), len(im))
    return ScanResult(samples, _detect_grid(re, im, values))
