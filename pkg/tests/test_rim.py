import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transeig import rim
from transeig.geometry import build_mesh, make_shape
from transeig.rim import (ContourHitError, RegularizationRequired, RimConfig, Sample, contour_nodes,
                          evaluate_point, log_peaks, rim_indicator, scan_complex_grid, scan_interval,
                          schur_operator, spectral_projection_apply)

DISK = build_mesh(make_shape("disk"), 32)
SQUARE = build_mesh(make_shape("square"), 16)


def test_config_validation():
    for bad in (0.0, -1e-3, 0.06):
        with pytest.raises(ValueError):
            RimConfig(radius=bad)
    with pytest.raises(ValueError):
        RimConfig(m=0)
    RimConfig(radius=0.05)


def test_probe_is_seeded():
    a, b = RimConfig(seed=3).probe(10), RimConfig(seed=3).probe(10)
    np.testing.assert_array_equal(a, b)
    assert not np.allclose(a, RimConfig(seed=4).probe(10))


def test_contour_nodes():
    z = contour_nodes(RimConfig(m=8, radius=0.01))
    assert len(z) == 16
    np.testing.assert_allclose(np.abs(z), 0.01)
    assert z[0] == 0.01


def test_projection_far_spectrum_vanishes():
    f = np.array([1.0, -2.0j])
    out = spectral_projection_apply(2 * np.eye(2), RimConfig(64, 0.01), f)
    assert np.linalg.norm(out) <= 1e-12


def test_projection_residue():
    out = spectral_projection_apply(np.diag([0.0, 2.0]), RimConfig(64, 0.01), np.array([1.0, 1.0]))
    np.testing.assert_allclose(out, [1.0, 0.0], atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.integers(0, 1000))
def test_projection_linear(alpha, beta, seed):
    rng = np.random.default_rng(seed)
    a = np.diag([0.0, 0.5, 2.0]) + 0.1 * rng.standard_normal((3, 3))
    f, g = rng.standard_normal(3) + 0j, 1j * rng.standard_normal(3)
    cfg = RimConfig(64, 0.01)
    lhs = spectral_projection_apply(a, cfg, alpha * f + beta * g)
    rhs = alpha * spectral_projection_apply(a, cfg, f) + beta * spectral_projection_apply(a, cfg, g)
    assert np.abs(lhs - rhs).max() <= 1e-12 * max(1.0, abs(alpha), abs(beta))


@pytest.mark.parametrize("diag", [[0.0, 2.0], [0.0, 2.0, 3.0], [1e-3 + 0j, 1.0, -1.0], [1.0, 2.0]])
def test_idempotence(diag):
    cfg = RimConfig(64, 0.01)
    a = np.diag(diag)
    f = cfg.probe(len(diag))
    pf = spectral_projection_apply(a, cfg, f)
    ppf = spectral_projection_apply(a, cfg, pf)
    assert np.linalg.norm(ppf - pf) <= 1e-8 * np.linalg.norm(f)


def test_indicator_examples():
    cfg = RimConfig(64, 0.01)
    assert abs(rim_indicator(np.diag([0.0, 2.0, 3.0]), cfg) - 1) <= 1e-8
    assert rim_indicator(np.diag([1.0, 2.0]), cfg) <= 1e-10


def test_indicator_zero_when_projection_underflows():
    assert rim_indicator(np.diag([1.0, 2.0]), RimConfig(64, 0.01), f=np.zeros(2)) == 0.0


def test_radius_robustness():
    a = np.diag([0.0, 2.0])
    v1 = rim_indicator(a, RimConfig(64, 0.001))
    v2 = rim_indicator(a, RimConfig(64, 0.01))
    assert abs(v1 - v2) <= 1e-6


def test_trapezoid_convergence_in_m():
    # eigenvalue off-centre inside the contour so that small m shows an error
    a = np.diag([0.006, 0.0125])
    f = np.array([1.0, 1.0])
    exact = np.array([1.0, 0.0])
    errs = [np.linalg.norm(spectral_projection_apply(a, RimConfig(m, 0.01), f) - exact)
            for m in (8, 16, 32, 64)]
    assert all(b <= a_ / 4 or b < 1e-14 for a_, b in zip(errs, errs[1:]))
    assert errs[0] > 1e-6


def test_probe_independence():
    a = np.diag([0.0, 2.0, 3.0])
    for seed in range(20):
        assert abs(rim_indicator(a, RimConfig(64, 0.01, seed)) - 1) <= 1e-6


def test_contour_hit():
    with pytest.raises(ContourHitError):
        rim_indicator(np.diag([0.01, 2.0]), RimConfig(64, 0.01))


# ---- Schur operator ------------------------------------------------------

def test_schur_unregularised_on_disk():
    op = schur_operator(2.0, 16, 0.0, DISK)
    assert not op.regularized and op.eta == 0.0
    assert op.matrix.shape == (64, 64)
    assert np.isfinite(op.condition) and op.condition < 1e8


def test_auto_eta_picks_zero_on_disk():
    assert schur_operator(2.0, 16, "auto", DISK).eta == 0.0


def test_tikhonov_converges_linearly_in_eta():
    # the smallest singular value of S at 4 kappa is ~8.5e-3, so eta = 1e-5 is
    # not negligible against sigma^2; the perturbation is O(eta / sigma_min^2)
    a0 = schur_operator(2.0, 16, 0.0, DISK).matrix
    scale = np.abs(a0).max()
    d = {eta: np.abs(schur_operator(2.0, 16, eta, DISK).matrix - a0).max() / scale
         for eta in (1e-5, 1e-7, 1e-9)}
    assert d[1e-7] <= 1e-3
    assert 50 < d[1e-5] / d[1e-7] < 200
    assert 50 < d[1e-7] / d[1e-9] < 200


def test_polygon_needs_regularisation():
    # the column of S at the corner node t = 0 vanishes, so S is singular
    with pytest.raises(RegularizationRequired) as info:
        schur_operator(2.0, 16, 0.0, SQUARE)
    assert info.value.condition == np.inf
    op = schur_operator(2.0, 16, "auto", SQUARE)
    assert op.regularized and op.eta == rim.AUTO_ETA


def test_schur_rejects_bad_parameters():
    with pytest.raises(ValueError):
        schur_operator(2.0, 1.0, 0.0, DISK)
    with pytest.raises(ValueError):
        schur_operator(2.0, 16, -1e-3, DISK)


def test_disk_indicator_on_and_off_eigenvalue():
    cfg = RimConfig(64, 1e-3)
    assert rim_indicator(schur_operator(1.9880, 16, 0.0, DISK), cfg) >= 0.5
    assert rim_indicator(schur_operator(1.8, 16, 0.0, DISK), cfg) <= 1e-3


@pytest.mark.parametrize("kappa", [2.0 + 0.3j, 4.9 + 0.58j])
def test_indicator_reflection(kappa):
    # A(-conj k) = conj A(k), so the indicator there equals the one at k with a conjugated probe
    cfg = RimConfig(64, 1e-3)
    a = schur_operator(kappa, 16, 0.0, DISK)
    b = schur_operator(-np.conj(kappa), 16, 0.0, DISK)
    np.testing.assert_allclose(b.matrix, a.matrix.conj(), atol=1e-10 * np.abs(a.matrix).max())
    f = cfg.probe(64)
    assert abs(rim_indicator(b, cfg, f) - rim_indicator(a, cfg, f.conj())) <= 1e-8


def test_evaluate_point_records_failures():
    s = evaluate_point(2.0, 16, 0.0, SQUARE, RimConfig())
    assert s.error and np.isnan(s.indicator)
    s = evaluate_point(-1.0, 16, 0.0, DISK, RimConfig())
    assert s.error and np.isnan(s.indicator)


# ---- scans and detection -------------------------------------------------

def test_scan_below_first_eigenvalue():
    res = scan_interval(1.0, 1.2, 10, 16, 0.0, DISK, RimConfig())
    assert len(res.samples) == 11
    assert res.detected == []
    assert np.all(res.indicators >= 0) and np.all(res.indicators <= 1e-3)


def test_scan_resolving_grid_detects_disk_eigenvalue():
    # a grid fine enough to land on the plateau |lambda_min| < r
    res = scan_interval(1.9875, 1.9885, 10, 16, 0.0, DISK, RimConfig())
    assert len(res.detected) == 1
    assert abs(res.detected[0] - 1.98800) < 2e-4


def test_scan_validation():
    with pytest.raises(ValueError):
        scan_interval(0.0, 1.0, 4, 16, 0.0, DISK, RimConfig())
    with pytest.raises(ValueError):
        scan_interval(1.0, 2.0, 0, 16, 0.0, DISK, RimConfig())
    with pytest.raises(ValueError):
        scan_complex_grid((-1.0, 0.0), (0.0, 1.0), 2, 2, 16, 0.0, DISK, RimConfig())


def test_scan_records_errors_and_continues():
    res = scan_interval(1.0, 1.1, 2, 16, 0.0, SQUARE, RimConfig())
    assert len(res.samples) == 3
    assert all(s.error for s in res.samples)
    assert res.detected == []


def _fake(plateaus):
    def f(k):
        return 1.0 if any(abs(k - c) <= w for c, w in plateaus) else 1e-16
    return f


@pytest.mark.parametrize("centre", [1.2345, 1.5, 1.70013])
def test_interval_detection_bisects_plateau_edges(centre):
    f = _fake([(centre, 0.006)])
    grid = np.linspace(1.0, 2.0, 101)
    found = rim._detect_interval(grid, np.array([f(k) for k in grid]), f)
    assert len(found) == 1
    assert abs(found[0] - centre) < 1e-4


def test_interval_detection_separates_plateaus():
    f = _fake([(1.2, 0.006), (1.5, 0.003)])
    grid = np.linspace(1.0, 2.0, 201)
    found = rim._detect_interval(grid, np.array([f(k) for k in grid]), f)
    np.testing.assert_allclose(found, [1.2, 1.5], atol=1e-4)


def test_grid_detection():
    re = np.linspace(0, 1, 11)
    im = np.linspace(0, 1, 21)
    v = np.zeros((11, 21))
    v[3, 5] = v[3, 6] = 1.0
    v[8, 15] = 0.7
    v[8, 16] = 0.3
    found = rim._detect_grid(re, im, v)
    assert len(found) == 2
    assert abs(found[0] - complex(0.3, 0.275)) < 1e-12
    assert abs(found[1] - complex(0.8, 0.75)) < 1e-12


def test_complex_scan_far_from_spectrum():
    res = scan_complex_grid((1.0, 1.1), (0.4, 0.5), 2, 2, 16, 0.0, DISK, RimConfig())
    assert len(res.samples) == 9
    assert np.all(res.indicators <= 1e-3)
    assert res.detected == []
    # real part varies slowest
    assert res.samples[1].kappa == complex(1.0, 0.45)


def test_worker_count_does_not_change_samples():
    cfg = RimConfig()
    a = scan_interval(1.9, 2.0, 3, 16, 0.0, DISK, cfg, workers=1)
    b = scan_interval(1.9, 2.0, 3, 16, 0.0, DISK, cfg, workers=2)
    assert [(s.kappa, s.indicator, s.eta, s.condition) for s in a.samples] == \
           [(s.kappa, s.indicator, s.eta, s.condition) for s in b.samples]
    assert a.detected == b.detected


def test_sample_defaults():
    s = Sample(1.0, 0.5)
    assert s.error is None and np.isnan(s.eta)


def test_log_peaks_finds_isolated_bumps():
    k = np.linspace(0.0, 1.0, 101)
    v = np.full(k.shape, 1e-16)
    v[30], v[70] = 1e-14, 3e-16
    v[50] = np.nan
    assert log_peaks(k, v) == [complex(k[30])]
    assert log_peaks(k, v, prominence=0.3) == [complex(k[30]), complex(k[70])]
