"""Dense complex linear algebra used by the Schur complement and the resolvent.

The factorisation itself is LAPACK ``zgetrf`` (through scipy); this module
adds the singularity flag, the error contract and a Hager-Higham 1-norm
condition estimator on top of it.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

SINGULAR_PIVOT_RTOL = 1e-14


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LuFactorization:
    """Row-pivoted ``P A = L U`` in LAPACK packed form."""

    lu: np.ndarray
    piv: np.ndarray
    singular: bool
    norm_max: float

    @property
    def n(self):
        return self.lu.shape[0]

    def permutation(self):
        """Row permutation ``perm`` with ``(P A) = A[perm]``."""
        perm = np.arange(self.n)
        for i, p in enumerate(self.piv):
            perm[i], perm[p] = perm[p], perm[i]
        return perm

    def factors(self):
        lower = np.tril(self.lu, -1) + np.eye(self.n)
        upper = np.triu(self.lu)
        return lower, upper


def _as_matrix(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    return a


def lu_factor(a):
    """Partial-pivoted LU factorisation; never raises on singular input.

    ``singular`` is set when a pivot falls below ``1e-14 * max|A_ij|``.
    """
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"LU needs a square matrix, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    norm_max = float(np.max(np.abs(a))) if a.size else 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    singular = norm_max == 0.0 or bool(np.min(pivots) < SINGULAR_PIVOT_RTOL * norm_max)
    return LuFactorization(lu, piv, singular, norm_max)


def lu_solve(fac, b, adjoint=False):
    """Solve ``A x = b`` (or ``A^H x = b``) with a factorisation of ``A``."""
    if fac.singular:
        raise SingularMatrixError("matrix is numerically singular")
    b = np.asarray(b, dtype=complex)
    if b.shape[0] != fac.n:
        raise DimensionError(f"rhs has {b.shape[0]} rows, matrix has {fac.n}")
    return sla.lu_solve((fac.lu, fac.piv), b, trans=2 if adjoint else 0,
                        check_finite=False)


def conj_transpose(a):
    return _as_matrix(a).conj().T


def matmul(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[-1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def condition_estimate(fac, a, iterations=5):
    """Estimate ``||A||_1 ||A^-1||_1`` with Hager's method (Higham's variant).

    Returns ``inf`` for a flagged-singular factorisation.  The estimate is a
    lower bound on the true value and in practice within a small factor.
    """
    if fac.singular:
        return np.inf
    a = _as_matrix(a)
    n = fac.n
    norm_a = np.abs(a).sum(axis=0).max()
    x = np.full(n, 1.0 / n, dtype=complex)
    est = 0.0
    last_j = -1
    for _ in range(iterations):
        y = lu_solve(fac, x)
        est = max(est, np.abs(y).sum())
        mag = np.abs(y)
        xi = np.where(mag > 0, y / np.where(mag > 0, mag, 1.0), 1.0)
        z = lu_solve(fac, xi, adjoint=True)
        j = int(np.argmax(np.abs(z)))
        if np.abs(z[j]) <= np.real(np.vdot(z, x)) or j == last_j:
            break
        x = np.zeros(n, dtype=complex)
        x[j] = 1.0
        last_j = j
    # alternating probe guards against the classical failure cases
    if n > 1:
        alt = (-1.0) ** np.arange(n) * (1.0 + np.arange(n) / (n - 1.0))
        est = max(est, 2.0 * np.abs(lu_solve(fac, alt)).sum() / (3.0 * n))
    return float(norm_a * est)
