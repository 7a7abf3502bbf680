import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transeig import linalg
from transeig.linalg import DimensionError, SingularMatrixError


def _rand(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def _det(a):
    # Leibniz expansion; only for tiny matrices
    n = a.shape[0]
    total = 0j
    for perm in itertools.permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inv * np.prod([a[i, perm[i]] for i in range(n)])
    return total


def _adjugate_solve(a, b):
    n = a.shape[0]
    d = _det(a)
    x = np.empty(n, complex)
    for i in range(n):
        ai = a.copy()
        ai[:, i] = b
        x[i] = _det(ai) / d
    return x


def test_identity_factor():
    f = linalg.lu_factor(np.eye(4))
    lower, upper = f.factors()
    np.testing.assert_array_equal(lower, np.eye(4))
    np.testing.assert_array_equal(upper, np.eye(4))
    np.testing.assert_array_equal(f.permutation(), np.arange(4))
    assert not f.singular


def test_singular_flag():
    f = linalg.lu_factor(np.diag([1.0, 0.0]))
    assert f.singular
    with pytest.raises(SingularMatrixError):
        linalg.lu_solve(f, np.ones(2))
    assert linalg.condition_estimate(f, np.diag([1.0, 0.0])) == np.inf
    assert linalg.lu_factor(np.zeros((3, 3))).singular


def test_reconstruction():
    rng = np.random.default_rng(7)
    a = _rand(rng, 6)
    f = linalg.lu_factor(a)
    lower, upper = f.factors()
    err = np.abs(a[f.permutation()] - lower @ upper).max()
    assert err <= 1e-13 * np.abs(a).max()


def test_simple_solves():
    np.testing.assert_array_equal(linalg.lu_solve(linalg.lu_factor(np.eye(3)), [1, 2j, 3]), [1, 2j, 3])
    np.testing.assert_allclose(linalg.lu_solve(linalg.lu_factor(np.diag([2.0, 4.0])), [2, 4]), [1, 1])


@pytest.mark.parametrize("seed", range(5))
def test_cofactor_oracle(seed):
    rng = np.random.default_rng(seed)
    a, b = _rand(rng, 4), _rand(rng, 4, 1)[:, 0]
    x = linalg.lu_solve(linalg.lu_factor(a), b)
    ref = _adjugate_solve(a, b)
    assert np.abs(x - ref).max() <= 1e-12 * np.abs(ref).max()


def test_adjoint_solve():
    rng = np.random.default_rng(3)
    a, b = _rand(rng, 8), _rand(rng, 8, 1)[:, 0]
    x = linalg.lu_solve(linalg.lu_factor(a), b, adjoint=True)
    np.testing.assert_allclose(a.conj().T @ x, b, atol=1e-12)


def test_round_trip_trials():
    rng = np.random.default_rng(2024)
    done = 0
    while done < 100:
        n = int(rng.integers(2, 33))
        a = _rand(rng, n)
        if np.linalg.cond(a) > 1e6:
            continue
        b = _rand(rng, n, 1)[:, 0]
        x = linalg.lu_solve(linalg.lu_factor(a), b)
        assert np.abs(a @ x - b).max() <= 1e-10 * np.abs(b).max()
        done += 1


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 24), st.integers(0, 2**32 - 1))
def test_round_trip_property(n, seed):
    rng = np.random.default_rng(seed)
    # diagonal shift keeps cond(A) moderate
    a = _rand(rng, n) + 3 * np.sqrt(n) * np.eye(n)
    b = _rand(rng, n, 1)[:, 0]
    x = linalg.lu_solve(linalg.lu_factor(a), b)
    assert np.abs(a @ x - b).max() <= 1e-10 * np.abs(b).max()


def test_conj_transpose():
    np.testing.assert_array_equal(linalg.conj_transpose([[1j, 0], [0, 0]]), [[-1j, 0], [0, 0]])
    rng = np.random.default_rng(1)
    a, b = _rand(rng, 4, 3), _rand(rng, 3, 5)
    np.testing.assert_array_equal(linalg.conj_transpose(linalg.conj_transpose(a)), a)
    np.testing.assert_allclose(linalg.conj_transpose(linalg.matmul(a, b)),
                               linalg.matmul(linalg.conj_transpose(b), linalg.conj_transpose(a)),
                               atol=1e-14)


def test_matmul_properties():
    rng = np.random.default_rng(11)
    a, b, c = _rand(rng, 5), _rand(rng, 5), _rand(rng, 5)
    np.testing.assert_array_equal(linalg.matmul(np.eye(5), a), a)
    lhs = linalg.matmul(linalg.matmul(a, b), c)
    rhs = linalg.matmul(a, linalg.matmul(b, c))
    assert np.abs(lhs - rhs).max() <= 1e-12 * np.abs(lhs).max()
    np.testing.assert_allclose(linalg.matmul(a, b + c), linalg.matmul(a, b) + linalg.matmul(a, c),
                               atol=1e-12)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        linalg.matmul(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(DimensionError):
        linalg.lu_factor(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        linalg.lu_solve(linalg.lu_factor(np.eye(3)), np.ones(2))
    with pytest.raises(ValueError):
        linalg.lu_factor([[np.nan, 0], [0, 1]])


@pytest.mark.parametrize("a, exact", [(np.eye(5), 1.0), (np.diag([1.0, 1e-8]), 1e8)])
def test_condition_simple(a, exact):
    est = linalg.condition_estimate(linalg.lu_factor(a), a)
    assert exact / 10 <= est <= exact * 10


@pytest.mark.parametrize("seed", range(10))
def test_condition_within_factor_ten(seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(_rand(rng, 8))
    for a in (q, q @ np.diag(np.logspace(0, -6, 8)) @ q.conj().T, _rand(rng, 8)):
        exact = np.linalg.cond(a, 1)
        est = linalg.condition_estimate(linalg.lu_factor(a), a)
        assert exact / 10 <= est <= exact * 1.0000001
