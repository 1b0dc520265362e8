"""Cesaro kernels at coordinate vectors, Lebesgue-constant sweeps, growth
classification, and the envelope checks behind the kernel estimates."""

import dataclasses
import math
from fractions import Fraction

import numpy as np
import pytest

from dunklsym.harmonics import build_sphere_rule, repro_kernel_axis
from dunklsym.orthopoly import JacobiParams, cesaro_kernel_endpoint
from dunklsym.polycore import KappaParams
from dunklsym.simplexquad import build_rule
from dunklsym.summability import (
    BOUNDED_POWER_THRESHOLD,
    _envelope_sum,
    _fit_models,
    cesaro_kernel_axis,
    cesaro_mean_at_axis,
    classify_growth,
    critical_sweep,
    default_sample_points,
    estimate_check,
    kernel_bound_check,
    knd_positivity_check,
    lebesgue_constant,
    lebesgue_sweep,
)

KP31 = KappaParams(3, 1)
SIMPLEX31 = build_rule(3, 1.0, 32)
SPHERE3 = build_sphere_rule(3, 24)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_kernel_axis_degree_zero_and_validation():
    x = unit([0.3, -0.5, 0.8])
    for delta in (0.0, 1.5, 4.0):
        assert abs(cesaro_kernel_axis(0, delta, 2, x, KP31, SIMPLEX31) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        cesaro_kernel_axis(3, 1.0, 1, np.array([0.5, 0.5, 0.5]), KP31, SIMPLEX31)
    with pytest.raises(ValueError):
        cesaro_kernel_axis(3, 1.0, 4, x, KP31, SIMPLEX31)
    with pytest.raises(ValueError):
        cesaro_kernel_axis(3, 1.0, 1, x[:2], KP31, SIMPLEX31)


def test_delta_zero_is_partial_sum_of_projections():
    rng = np.random.default_rng(50)
    for _ in range(3):
        x = unit(rng.normal(size=3))
        want = sum(repro_kernel_axis(k, 1, x, KP31, SIMPLEX31) for k in range(7))
        got = cesaro_kernel_axis(6, 0.0, 1, x, KP31, SIMPLEX31)
        assert abs(got - want) <= 1e-7 * max(1.0, abs(want))


def test_kappa_zero_reduces_to_one_variable_kernel():
    kp0 = KappaParams(3, 0)
    jp = JacobiParams(0.0, 0.0)  # lambda = 1/2 at kappa = 0, d = 3
    x = unit([0.2, 0.9, -0.3])
    for n, delta in ((4, 0.5), (9, 2.0)):
        got = cesaro_kernel_axis(n, delta, 2, x, kp0, None)
        want = cesaro_kernel_endpoint(n, jp, delta, float(x[1]))
        assert got == want


def test_cesaro_mean_reproduces_constants():
    for n, delta in ((3, 0.5), (10, 2.0)):
        val = cesaro_mean_at_axis(lambda X: np.ones(len(X)), n, delta, 1,
                                  KP31, SPHERE3, SIMPLEX31)
        assert abs(val - 1.0) < 1e-10


def test_lebesgue_constant_record():
    rec = lebesgue_constant(0, 1.0, 1, KP31, SPHERE3, SIMPLEX31)
    assert abs(rec.value - 1.0) < 1e-10
    assert rec.quad_error_estimate < 1e-10
    assert (rec.d, rec.kappa, rec.ell, rec.n, rec.delta) == (3, 1.0, 1, 0, 1.0)
    with pytest.raises(dataclasses.FrozenInstanceError):
        rec.value = 2.0


def test_sweep_matches_direct_evaluation():
    # the moment-table engine against the one-shot path, on both the exact
    # pushforward branch (d=3, integer kappa) and the tensor branch
    for params in (KP31, KappaParams(2, Fraction(3, 2)), KappaParams(3, 0)):
        records = lebesgue_sweep(params, [1.5], 5, sphere_order=24)
        sphere = build_sphere_rule(params.d, 24, kappa_hint=params.kappa)
        simplex = (build_rule(params.d, params.kappa_float, 32)
                   if params.kappa != 0 else None)
        for rec in records:
            direct = lebesgue_constant(rec.n, 1.5, 1, params, sphere, simplex)
            assert abs(rec.value - direct.value) <= 1e-9 * max(1.0, direct.value)


def test_sweep_order_progress_and_workers():
    seen = []
    records = lebesgue_sweep(KP31, [2.0, 1.0], 4, sphere_order=16,
                             progress=seen.append)
    assert records == seen
    assert [(r.delta, r.n) for r in records] == \
        [(d, n) for d in (2.0, 1.0) for n in range(1, 5)]
    two = lebesgue_sweep(KP31, [2.0, 1.0], 4, sphere_order=16, workers=2)
    assert [r.value for r in two] == [r.value for r in records]


def test_workers_env_var(monkeypatch):
    monkeypatch.setenv("DUNKLSYM_WORKERS", "2")
    a = lebesgue_sweep(KP31, [1.5], 3, sphere_order=16)
    monkeypatch.setenv("DUNKLSYM_WORKERS", "1")
    b = lebesgue_sweep(KP31, [1.5], 3, sphere_order=16)
    assert [r.value for r in a] == [r.value for r in b]
    with pytest.raises(ValueError):
        lebesgue_sweep(KP31, [1.5], 3, sphere_order=16, workers=0)


def test_sup_nonincreasing_in_delta_and_large_delta_bounded():
    n_max = 24
    sups = []
    for delta in (1.0, 2.0, 3.5):
        records = lebesgue_sweep(KP31, [delta], n_max, sphere_order=48)
        sups.append(max(r.value for r in records))
    assert sups[0] >= sups[1] >= sups[2]
    # far above the critical index the constants stay next to 1
    lam = float(KP31.lambda_kappa)
    records = lebesgue_sweep(KP31, [lam + 2.0], 48, sphere_order=64)
    assert max(r.value for r in records) <= 1.1


def test_critical_sweep_validation():
    with pytest.raises(ValueError):
        critical_sweep(KP31, [1.0, 2.0], 32)
    with pytest.raises(ValueError):
        critical_sweep(KP31, [2.0, 3.0], 64)  # does not straddle 3/2


def test_critical_sweep_classifications_smoke():
    out = critical_sweep(KP31, [1.0, 1.5, 2.0], 64, sphere_order=72)
    assert out["critical_delta"] == 1.5
    assert out["sign_change_threshold"] == float(KP31.lambda_kappa - KP31.kappa)
    assert out["window"] == [16, 64]
    assert len(out["records"]) == 3 * 64
    by_delta = {row["delta"]: row for row in out["per_delta"]}
    assert by_delta[1.0]["classification"] == "growing"
    assert by_delta[2.0]["classification"] == "bounded"
    # at the critical index the ranking between log and power stays an
    # observation; only record that the fit fields are present
    assert {"b", "se_b", "p", "se_p", "rss_const", "rss_log", "rss_power"} \
        <= set(by_delta[1.5])


def test_classify_growth_on_synthetic_data():
    ns = np.arange(16, 65)
    flat = _fit_models(ns, np.full(len(ns), 3.0) + 1e-9 * np.sin(ns))
    assert classify_growth(flat) == ("bounded", "constant")
    power = _fit_models(ns, 0.5 * ns ** 0.4)
    assert classify_growth(power) == ("growing", "power")
    logd = _fit_models(ns, 2.0 + 0.3 * np.log(ns))
    assert classify_growth(logd) == ("growing", "log")
    assert 0 < BOUNDED_POWER_THRESHOLD < 0.4


def test_envelope_sum_structure():
    # at e_1 the i >= 2 terms sit on the diagonal x_2 = x_3: infinite
    # envelope, so ratios against it collapse to zero but stay finite
    assert _envelope_sum(np.array([1.0, 0.0, 0.0]), 16, 1.0, 2.0) == math.inf
    val = _envelope_sum(np.array([0.9, 0.3, -0.1]), 16, 1.0, 2.0)
    assert 0 < val < math.inf


def test_estimate_check_hypotheses_and_stability():
    pts = default_sample_points(3)
    with pytest.raises(ValueError):
        estimate_check(16, KappaParams(3, 0), 2.5, 2.5, pts)
    with pytest.raises(ValueError):
        estimate_check(16, KP31, 2.5, 3.0, pts)
    with pytest.raises(ValueError):
        estimate_check(16, KP31, 1.0, 0.0, pts)
    r16 = estimate_check(16, KP31, 2.5, 2.5, pts)
    r32 = estimate_check(32, KP31, 2.5, 2.5, pts)
    assert 0 < r16 < math.inf and 0 < r32 < math.inf
    assert 0.5 <= r32 / r16 <= 2.0


def test_kernel_bound_finite_at_random_points_and_axis():
    rng = np.random.default_rng(51)
    pts = rng.normal(size=(50, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    ratio = kernel_bound_check(16, 1.6, 1, KP31, pts)
    assert 0 < ratio < math.inf
    # at the coordinate vector itself the envelope is infinite: ratio 0
    assert kernel_bound_check(16, 1.6, 1, KP31, np.array([[1.0, 0.0, 0.0]])) == 0.0


def test_knd_positivity_report():
    rep = knd_positivity_check(100, JacobiParams(0.0, 0.0), 2.0)
    assert rep["min_value"] >= -1e-12
    assert rep["fitted_c"] > 0
    assert rep["grid_points"] == 801
    rep2 = knd_positivity_check(50, JacobiParams(0.0, 0.0), 2.0)
    assert 0.5 <= rep["fitted_c"] / rep2["fitted_c"] <= 2.0
    with pytest.raises(ValueError):
        knd_positivity_check(20, JacobiParams(0.0, 0.0), 1.5)
    with pytest.raises(ValueError):
        knd_positivity_check(20, JacobiParams(-0.6, 0.0), 3.0)


def test_smooth_function_converges_above_critical():
    coefs = np.array([0.3, -0.2, 0.5])

    def f(X):
        return (X @ coefs) ** 6 + X[:, 0] ** 2

    target = float(f(np.array([[1.0, 0.0, 0.0]]))[0])
    devs = []
    for n in (8, 16, 32):
        sphere = build_sphere_rule(3, n + 16)
        val = cesaro_mean_at_axis(f, n, 2.0, 1, KP31, sphere, SIMPLEX31)
        devs.append(abs(val - target))
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < devs[0] / 2


def test_default_sample_points_layout():
    pts = default_sample_points(3)
    assert pts.shape == (11, 3)
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    again = default_sample_points(3)
    assert np.array_equal(pts, again)
    assert not np.array_equal(pts, default_sample_points(3, seed=7))
