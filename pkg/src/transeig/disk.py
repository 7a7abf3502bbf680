"""Exact transmission eigenvalues of a disk from the separated Bessel determinant.

For a disk of radius ``R`` and index ``mu`` the order-``m`` mode is a
transmission eigenfunction exactly when

    D_m(k) = k J_m(k sqrt(mu) R) J_m'(k R) - k sqrt(mu) J_m(k R) J_m'(k sqrt(mu) R)

vanishes.  The roots are real for real ``k`` and are bracketed on a fine
grid, then polished with Brent's method.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import brentq
from scipy.special import jv, jvp

MAX_ORDER = 12
GRID_STEP = 1e-3
DEDUP_SPACING = 1e-6


def _check_order(m):
    if int(m) != m or m < 0:
        raise ValueError(f"order must be a non-negative integer, got {m!r}")
    if m > MAX_ORDER:
        raise ValueError(f"unsupported order {m}; at most {MAX_ORDER}")
    return int(m)


def disk_determinant(kappa, m, mu=16.0, radius=0.5):
    """``D_m(kappa)`` for real ``kappa > 0`` (array-valued)."""
    m = _check_order(m)
    if not mu > 1 or not radius > 0:
        raise ValueError("need mu > 1 and radius > 0")
    k = np.asarray(kappa, float)
    n = np.sqrt(mu)
    x, y = k * radius, k * n * radius
    return k * jv(m, y) * jvp(m, x) - k * n * jv(m, x) * jvp(m, y)


def shifted_form(kappa, m):
    """``J_{m-1}(k/2) J_m(2k) - 4 J_m(k/2) J_{m-1}(2k)`` (``mu = 16``, ``R = 1/2``).

    At ``m = 0`` this uses ``J_{-1} = -J_1``, so it is the negative of the
    usual ``J_1(k/2) J_0(2k) - 4 J_0(k/2) J_1(2k)``; the roots agree.
    """
    m = _check_order(m)
    k = np.asarray(kappa, float)
    x, y = 0.5 * k, 2.0 * k
    return jv(m - 1, x) * jv(m, y) - 4.0 * jv(m, x) * jv(m - 1, y)


def order_zero_form(kappa):
    """``J_1(k/2) J_0(2k) - 4 J_0(k/2) J_1(2k)``."""
    k = np.asarray(kappa, float)
    return jv(1, 0.5 * k) * jv(0, 2.0 * k) - 4.0 * jv(0, 0.5 * k) * jv(1, 2.0 * k)


def _roots_of_order(m, a, b, mu, radius, tol, step):
    count = max(1, int(np.ceil((b - a) / step)))
    grid = np.linspace(a, b, count + 1)
    vals = disk_determinant(grid, m, mu, radius)
    out = []
    for i in np.nonzero(vals == 0)[0]:
        out.append(float(grid[i]))
    # strict sign changes between neighbours
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        f = lambda k: float(disk_determinant(k, m, mu, radius))
        out.append(brentq(f, grid[i], grid[i + 1], xtol=tol, rtol=4 * np.finfo(float).eps))
    return out


def find_roots(m_max=8, interval=(1.5, 5.0), mu=16.0, radius=0.5, tol=1e-8, step=GRID_STEP):
    """Sorted ``[(kappa, m), ...]`` of determinant roots in ``interval`` for ``m <= m_max``."""
    a, b = map(float, interval)
    if not 0 < a:
        raise ValueError("interval must lie in kappa > 0")
    if b <= a:
        return []
    _check_order(m_max)
    found = []
    for m in range(m_max + 1):
        found.extend((k, m) for k in _roots_of_order(m, a, b, mu, radius, tol, step))
    found.sort()
    out = []
    for k, m in found:
        if out and k - out[-1][0] < DEDUP_SPACING:
            continue
        out.append((k, m))
    return out
