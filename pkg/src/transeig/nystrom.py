"""Nystrom discretisation of the single and double layer operators.

Both kernels are split as ``K1(s, t) ln(4 sin^2((s - t)/2)) + K2(s, t)``;
the logarithmic part is integrated with the trigonometric interpolation
weights of :func:`log_weights` and the smooth part with the trapezoid rule.
On graded polygon meshes the double layer uses subtraction of the static
kernel instead, which keeps every quadrature sum free of the corner blow-up
of ``z''``.
"""
from __future__ import annotations

import numpy as np

from .special import EULER_GAMMA, cylinder, SpecialFunctionError

INV_4PI = 1.0 / (4.0 * np.pi)


def _check_kappa(kappa):
    kappa = complex(kappa)
    if kappa == 0 or (kappa.imag == 0 and kappa.real < 0):
        raise SpecialFunctionError("wavenumber must avoid the cut (-inf, 0]")
    return kappa


def log_weight_row(n):
    """``R_j(t_0)`` for ``j = 0..2n-1``; the full matrix is circulant in ``i - j``."""
    k = np.arange(2 * n)
    # the row is even in tau; fold so that it is exactly symmetric
    tau = np.pi * np.minimum(k, 2 * n - k) / n
    ell = np.arange(1, n)
    w = -(2.0 * np.pi / n) * (np.cos(np.outer(tau, ell)) / ell).sum(axis=1)
    w -= (np.pi / n**2) * np.cos(n * tau)
    return w


def log_weights(n, i=None, j=None):
    """Weights for ``int_0^2pi f(t) ln(4 sin^2((t_i - t)/2)) dt ~ sum_j R_ij f(t_j)``.

    With no indices, the full ``2n x 2n`` matrix.
    """
    row = log_weight_row(n)
    if i is not None and j is not None:
        return row[(i - j) % (2 * n)]
    k = np.arange(2 * n)
    return row[(k[:, None] - k[None, :]) % (2 * n)]


class _Pairs:
    """Geometry of all node pairs, shared by the S and D assemblies."""

    def __init__(self, mesh):
        self.mesh = mesh
        n = mesh.n
        z = mesh.z
        d = z[:, None, :] - z[None, :, :]
        self.diff = d
        self.r = np.hypot(d[..., 0], d[..., 1])
        self.off = ~np.eye(2 * n, dtype=bool)
        tt = mesh.t[:, None] - mesh.t[None, :]
        with np.errstate(divide="ignore"):
            self.logk = np.log(4.0 * np.sin(0.5 * tt) ** 2)
        self.logk[~self.off] = 0.0
        self.R = log_weights(n)
        # (z_i - z_j) . nu_j / r on the off-diagonal
        dn = np.einsum("ijk,jk->ij", d, mesh.normal)
        r_safe = np.where(self.off, self.r, 1.0)
        self.cos_ = np.where(self.off, dn / r_safe, 0.0)
        self.static = np.where(self.off, dn / r_safe**2, 0.0) * mesh.jacobian[None, :] / (2.0 * np.pi)
        self._upper = None

    def bessel(self, kappa):
        """Cylinder functions of ``kappa r_ij``; r is symmetric, so each pair is done once."""
        if self._upper is None:
            iu = np.triu_indices(len(self.r), 1)
            if np.any(self.r[iu] == 0):
                raise ValueError("mesh has coincident nodes")
            self._upper = iu
        iu = self._upper
        vals = cylinder(kappa * self.r[iu])
        out = []
        for v in vals:
            full = np.empty(self.r.shape, complex)
            full[iu] = v
            full.T[iu] = v
            # the diagonal is never read through these arrays
            np.fill_diagonal(full, 0.0)
            out.append(full)
        return None, tuple(out)


def _pairs(mesh):
    cache = getattr(mesh, "_pairs_cache", None)
    if cache is None:
        cache = _Pairs(mesh)
        object.__setattr__(mesh, "_pairs_cache", cache)
    return cache


def _single(kappa, pr, bess):
    mesh = pr.mesh
    n = mesh.n
    jac = mesh.jacobian
    j0, _, h0, _ = bess
    k_full = 0.25j * h0 * jac[None, :]
    k1 = -INV_4PI * j0 * jac[None, :]
    k2 = k_full - k1 * pr.logk
    diag = np.arange(2 * n)
    k1[diag, diag] = -INV_4PI * jac
    pos = jac > 0
    d2 = np.zeros(2 * n, complex)
    d2[pos] = (0.25j - EULER_GAMMA / (2 * np.pi)
               - np.log(kappa * jac[pos] / 2.0) / (2 * np.pi)) * jac[pos]
    k2[diag, diag] = d2
    return pr.R * k1 + (np.pi / n) * k2


def _double(kappa, pr, bess):
    mesh = pr.mesh
    n = mesh.n
    jac = mesh.jacobian
    _, j1, _, h1 = bess
    kd = 0.25j * kappa * pr.cos_ * h1 * jac[None, :]
    diag = np.arange(2 * n)
    if mesh.curve.has_corners:
        # trapezoid on (K - K0) + K0 (phi_j - phi_i) - phi_i / 2; the first
        # difference vanishes on the diagonal
        m = (np.pi / n) * kd
        m[diag, diag] = -(np.pi / n) * pr.static.sum(axis=1) - 0.5
        return m
    k1 = -kappa * INV_4PI * pr.cos_ * j1 * jac[None, :]
    k2 = kd - k1 * pr.logk
    k1[diag, diag] = 0.0
    curv = np.einsum("ij,ij->i", mesh.ddz, mesh.normal)
    k2[diag, diag] = INV_4PI * curv / jac
    return pr.R * k1 + (np.pi / n) * k2


def single_layer_matrix(kappa, mesh):
    """Discrete single layer operator ``S_{kappa,n}`` on ``mesh``."""
    kappa = _check_kappa(kappa)
    pr = _pairs(mesh)
    _, bess = pr.bessel(kappa)
    return _single(kappa, pr, bess)


def double_layer_matrix(kappa, mesh):
    """Discrete double layer operator ``D_{kappa,n}`` on ``mesh``."""
    kappa = _check_kappa(kappa)
    pr = _pairs(mesh)
    _, bess = pr.bessel(kappa)
    return _double(kappa, pr, bess)


def layer_matrices(kappa, mesh):
    """``(S, D)`` at one wavenumber, sharing the Bessel evaluations."""
    kappa = _check_kappa(kappa)
    pr = _pairs(mesh)
    _, bess = pr.bessel(kappa)
    return _single(kappa, pr, bess), _double(kappa, pr, bess)


def assemble_block_system(kappa, mu, mesh):
    """The ``4n x 4n`` matrix ``[[I/2 + D_k, -S_k], [I/2 + D_k1, -S_k1]]``, ``k1 = k sqrt(mu)``."""
    if not mu > 1:
        raise ValueError("refractive index must exceed 1")
    s, d = layer_matrices(kappa, mesh)
    s1, d1 = layer_matrices(complex(kappa) * np.sqrt(mu), mesh)
    half = 0.5 * np.eye(mesh.size)
    return np.block([[half + d, -s], [half + d1, -s1]])


def static_row_sums(mesh):
    """Trapezoid row sums of the Laplace double layer kernel (tests, diagnostics)."""
    return (np.pi / mesh.n) * _pairs(mesh).static.sum(axis=1)
