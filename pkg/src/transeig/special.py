"""Complex-argument cylinder functions of order 0 and 1.

Ascending series (with the logarithmic terms for Y) are used for
``|z| <= SERIES_RADIUS``; the Hankel asymptotic expansions take over
outside.  Inside the series disk two regions lose digits to cancellation
and get an integral representation instead: for large ``Im z`` the
Hankel functions are recessive and come from the Macdonald function
integral, and near the real axis (``|z| >= _RING_INNER``) the series
terms dwarf the result, so Hankel's integral is used and ``J`` follows
from ``(H1 + H2) / 2``.  Everything
is vectorised over numpy arrays and uses the principal branch of the
logarithm and square root, so the functions are analytic on the plane
cut along the negative real axis.
"""
from __future__ import annotations

import numpy as np

EULER_GAMMA = 0.5772156649015329

SERIES_RADIUS = 13.0
MAX_ARGUMENT = 1.0e3

_N_SERIES = 48
# optimal truncation of the asymptotic series sits near k = 2|z|
_N_ASYMP = 24
# above this Im z the series loses more than ~e^6 to cancellation in H
_IMAG_SWITCH = 3.0
_K_STEP = 0.02
_K_NODES = np.arange(0.0, 4.0, _K_STEP)
_RING_INNER = 2.5
_G_STEP = 0.15
_G_NODES = np.arange(0.0, 6.5, _G_STEP)
_G_WEIGHTS = np.where(_G_NODES == 0.0, 1.0, 2.0) * _G_STEP


class SpecialFunctionError(ValueError):
    """Argument outside the supported domain."""


def _series_coefficients():
    k = np.arange(_N_SERIES)
    fact = np.cumprod(np.r_[1.0, np.arange(1.0, _N_SERIES + 1)])
    # harmonic numbers H_k with H_0 = 0
    harm = np.r_[0.0, np.cumsum(1.0 / np.arange(1.0, _N_SERIES + 1))]
    sign = (-1.0) ** k
    c_j0 = sign / fact[k] ** 2
    c_j1 = sign / (fact[k] * fact[k + 1])
    # Y0 tail: sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
    c_y0 = -sign * harm[k] / fact[k] ** 2
    # Y1 tail: psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2*gamma
    c_y1 = sign * (harm[k] + harm[k + 1] - 2.0 * EULER_GAMMA) / (fact[k] * fact[k + 1])
    return c_j0, c_j1, c_y0, c_y1


_C_J0, _C_J1, _C_Y0, _C_Y1 = _series_coefficients()


def _asymptotic_coefficients(order):
    a = np.ones(_N_ASYMP)
    mu = 4.0 * order**2
    for k in range(1, _N_ASYMP):
        a[k] = a[k - 1] * (mu - (2 * k - 1) ** 2) / (k * 8.0)
    return a


_A0 = _asymptotic_coefficients(0)
_A1 = _asymptotic_coefficients(1)


def _poly(coeffs, x):
    # Horner in x for sum_k coeffs[k] x^k
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def _series(z):
    """J0, J1, Y0, Y1 from the ascending series."""
    q = 0.25 * z * z
    half = 0.5 * z
    j0 = _poly(_C_J0, q)
    j1 = half * _poly(_C_J1, q)
    lg = np.log(half) + EULER_GAMMA
    y0 = (2.0 / np.pi) * (lg * j0 + _poly(_C_Y0, q))
    y1 = (-2.0 / (np.pi * z) + (2.0 / np.pi) * np.log(half) * j1
          - (1.0 / np.pi) * half * _poly(_C_Y1, q))
    return j0, j1, y0, y1


def _hankel_asymptotic(z, kind):
    """(H0, H1) of the given kind (1 or 2) for large |z|."""
    s = 1j if kind == 1 else -1j
    w = s / z
    pref = np.sqrt(2.0 / (np.pi * z))
    # only the slowly varying factor is summed; terms start growing beyond
    # k ~ 2|z| so the fixed truncation is safe for |z| > SERIES_RADIUS
    ph = np.exp(s * (z - 0.25 * np.pi))
    h0 = pref * ph * _poly(_A0, w)
    h1 = pref * ph * np.exp(-s * 0.5 * np.pi) * _poly(_A1, w)
    return h0, h1


def _hankel_integral(z):
    """(H0, H1) for Im z > 0 via K_nu(w) = int_0^inf exp(-w cosh t) cosh(nu t) dt.

    With ``w = -iz`` one has ``H_nu = (2/pi) (-i)^(nu+1) K_nu(w)``.  The
    trapezoid rule on the even, doubly-exponentially decaying integrand
    converges geometrically; the node set covers ``Re w >= _IMAG_SWITCH``.
    """
    w = -1j * z[:, None]
    t = _K_NODES[None, :]
    e = np.exp(-w * np.cosh(t))
    wt = np.full(_K_NODES.shape, _K_STEP)
    wt[0] *= 0.5
    k0 = e @ wt
    k1 = (e * np.cosh(t)) @ wt
    return (2.0 / np.pi) * (-1j) * k0, (2.0 / np.pi) * (-1.0) * k1


def _hankel_gauss(w):
    """(H0, H1) for ``|arg w| <= pi/4`` from Hankel's integral.

    ``H_nu(w) = sqrt(2/(pi w)) e^{i(w - nu pi/2 - pi/4)} / Gamma(nu + 1/2)
    * int_0^inf e^{-u} u^{nu-1/2} (1 + iu/(2w))^{nu-1/2} du``; with
    ``u = s^2`` the integrand is even, smooth and Gaussian, so the
    trapezoid rule on the whole line converges geometrically.
    """
    s2 = (_G_NODES**2)[None, :]
    base = 1.0 + 1j * s2 / (2.0 * w[:, None])
    g = np.exp(-s2) * _G_WEIGHTS[None, :]
    rs = 1.0 / np.sqrt(base)
    i0 = rs @ g[0]
    i1 = (base * rs) @ (g[0] * s2[0])
    pref = np.sqrt(2.0 / (np.pi * w)) * np.exp(1j * (w - 0.25 * np.pi))
    # Gamma(1/2) = sqrt(pi), Gamma(3/2) = sqrt(pi)/2, e^{-i pi/2} = -i
    return pref * i0 / np.sqrt(np.pi), -1j * pref * i1 * 2.0 / np.sqrt(np.pi)


def _near_axis(z):
    """J0, J1, H0, H1 within 45 degrees of the real axis, via reflection to Re > 0."""
    right = z.real >= 0
    w = np.where(right, z, -z)
    a0, a1 = _hankel_gauss(w)
    b0, b1 = _hankel_gauss(np.conj(w))
    # H2(w) = conj(H1(conj w))
    c0, c1 = np.conj(b0), np.conj(b1)
    jw0, jw1 = 0.5 * (a0 + c0), 0.5 * (a1 + c1)
    j0 = jw0
    j1 = np.where(right, jw1, -jw1)
    # H1_nu(w e^{i pi}) = -e^{-i nu pi} H2_nu(w), and
    # H1_nu(w e^{-i pi}) = e^{-i nu pi} (2 J_nu(w) + H1_nu(w))
    upper = z.imag >= 0
    h0 = np.where(right, a0, np.where(upper, -c0, 2.0 * jw0 + a0))
    h1 = np.where(right, a1, np.where(upper, c1, -(2.0 * jw1 + a1)))
    return j0, j1, h0, h1


def _asymptotic(z):
    """J0, J1, H0, H1 for |z| > SERIES_RADIUS."""
    h0, h1 = _hankel_asymptotic(z, 1)
    # near arg z = -pi use H_nu(z) = 2 e^{-i nu pi} J_nu(-z) + e^{i nu pi} H_nu(-z)
    third = (z.real < 0) & (z.imag < 0)
    # J from (H1 + H2)/2 in the right half plane, reflected elsewhere
    zr = np.where(z.real >= 0, z, -z)
    a0, a1 = _hankel_asymptotic(zr, 1)
    b0, b1 = _hankel_asymptotic(zr, 2)
    j0 = 0.5 * (a0 + b0)
    j1 = 0.5 * (a1 + b1)
    j1 = np.where(z.real >= 0, j1, -j1)
    if np.any(third):
        r0, r1 = _hankel_asymptotic(-z[third], 1)
        h0[third] = 2.0 * j0[third] + r0
        # j1 already holds J1(z) = -J1(-z)
        h1[third] = 2.0 * j1[third] - r1
    return j0, j1, h0, h1


def _check(z, allow_zero=False):
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise SpecialFunctionError("non-finite argument")
    if np.any(np.abs(z) > MAX_ARGUMENT):
        raise SpecialFunctionError(f"|z| exceeds supported range {MAX_ARGUMENT:g}")
    if not allow_zero and np.any(z == 0):
        raise SpecialFunctionError("singular argument z = 0")
    return z


def cylinder(z):
    """Return ``(J0, J1, H0, H1)`` of the first kind at ``z``.

    ``z`` may be any array of nonzero complex numbers with ``|z| <= 1e3``.
    Computing all four at once shares the work between the kernels of the
    single and double layer operators.
    """
    z = _check(z)
    az = np.abs(z)
    big = az > SERIES_RADIUS
    ring = ~big & (az >= _RING_INNER) & (np.abs(z.imag) <= np.abs(z.real))
    small = ~big & ~ring
    j0 = np.empty(z.shape, complex)
    j1 = np.empty_like(j0)
    h0 = np.empty_like(j0)
    h1 = np.empty_like(j0)
    if np.any(small):
        a, b, c, d = _series(z[small])
        j0[small], j1[small] = a, b
        h0[small], h1[small] = a + 1j * c, b + 1j * d
        rec = small & (z.imag > _IMAG_SWITCH)
        if np.any(rec):
            h0[rec], h1[rec] = _hankel_integral(z[rec])
    if np.any(ring):
        j0[ring], j1[ring], h0[ring], h1[ring] = _near_axis(z[ring])
    if np.any(big):
        a, b, c, d = _asymptotic(z[big])
        j0[big], j1[big], h0[big], h1[big] = a, b, c, d
    return j0, j1, h0, h1


def _order(order):
    if order not in (0, 1):
        raise SpecialFunctionError(f"unsupported order {order!r}; only 0 and 1")


def bessel_j(order, z):
    """Bessel function of the first kind, order 0 or 1."""
    _order(order)
    z = _check(z, allow_zero=True)
    out = np.empty(z.shape, complex)
    zero = z == 0
    out[zero] = 1.0 if order == 0 else 0.0
    if np.any(~zero):
        j0, j1, _, _ = cylinder(z[~zero])
        out[~zero] = j0 if order == 0 else j1
    return out if out.ndim else out[()]


def bessel_y(order, z):
    """Bessel function of the second kind, order 0 or 1."""
    _order(order)
    z = _check(z)
    j0, j1, h0, h1 = cylinder(z)
    out = (h0 - j0) / 1j if order == 0 else (h1 - j1) / 1j
    return out if out.ndim else out[()]


def hankel1(order, z):
    """Hankel function of the first kind, ``H = J + iY``."""
    _order(order)
    z = _check(z)
    _, _, h0, h1 = cylinder(z)
    out = h0 if order == 0 else h1
    return out if out.ndim else out[()]


def green_function(kappa, x, y):
    """Helmholtz fundamental solution ``(i/4) H0(kappa |x - y|)`` in 2D.

    ``x`` and ``y`` are points (or broadcastable arrays of points) with
    coordinates in the last axis.
    """
    kappa = complex(kappa)
    if kappa == 0 or (kappa.imag == 0 and kappa.real < 0):
        raise SpecialFunctionError("wavenumber must avoid the cut (-inf, 0]")
    d = np.linalg.norm(np.asarray(x, float) - np.asarray(y, float), axis=-1)
    if np.any(d == 0):
        raise SpecialFunctionError("coincident points")
    return 0.25j * hankel1(0, kappa * d)
