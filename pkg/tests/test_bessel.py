"""Generalized Bessel functions: the classical J building block against
scipy, and the d=2 closed form / d>=3 recursion against the defining
simplex integrals."""

import cmath
import math

import numpy as np
import pytest
from scipy.special import jv

from dunklsym.bessel import (
    bessel_k,
    bessel_k2_closed,
    bessel_k2_direct,
    bessel_recursive,
    classical_bessel_j,
    closed_form_report,
    dunkl_exp_axis,
    _j_poisson,
    _j_series,
)
from dunklsym.intertwine import AxisFunction, vk_axis
from dunklsym.polycore import KappaParams
from dunklsym.simplexquad import build_rule

RULE2 = {k: build_rule(2, k, 48) for k in (0.5, 1.0, 1.5)}
RULE3 = {k: build_rule(3, k, 32) for k in (0.5, 1.0)}


def test_classical_j_against_scipy():
    z = np.linspace(0.0, 50.0, 201)
    for nu in (0.0, 0.25, 0.5, 1.0, 1.5, 2.5, 4.0, 6.0):
        for zi in z:
            got = classical_bessel_j(nu, zi)
            want = jv(nu, zi)
            # relative to the local oscillation amplitude sqrt(2/(pi z)):
            # at a zero of J no finite-precision method has small plain
            # relative error, so the denominator is floored there
            floor = math.sqrt(2 / (math.pi * max(zi, 2.0)))
            assert abs(got - want) <= 1e-10 * max(abs(want), floor)


def test_classical_j_half_closed_form():
    for z in (0.5, 1.0, 2.0, 5.0):
        want = math.sqrt(2 / (math.pi * z)) * math.sin(z)
        assert abs(classical_bessel_j(0.5, z) - want) <= 1e-12 * abs(want)


def test_classical_j_branch_overlap():
    for nu in (0.0, 0.5, 1.5, 3.0):
        for z in np.linspace(8.0, 12.0, 17):
            assert abs(_j_series(nu, z) - _j_poisson(nu, z)) <= 1e-10


def test_classical_j_at_zero_and_errors():
    assert classical_bessel_j(0.0, 0.0) == 1.0
    assert classical_bessel_j(1.5, 0.0) == 0.0
    with pytest.raises(ValueError):
        classical_bessel_j(-0.6, 1.0)


def test_k_at_zero_is_one_on_every_path():
    for k, rule in RULE2.items():
        assert abs(bessel_k(2, k, np.zeros(2), rule, path="direct") - 1) < 1e-10
        assert abs(bessel_k(2, k, np.zeros(2), rule, path="coset") - 1) < 1e-10
        assert abs(bessel_k2_closed(k, np.array([0.4, -0.2]), np.zeros(2)) - 1) < 1e-10
        assert abs(bessel_k2_direct(k, np.array([0.4, -0.2]), np.zeros(2), rule) - 1) < 1e-10
    for k, rule in RULE3.items():
        assert abs(bessel_k(3, k, np.zeros(3), rule, path="direct") - 1) < 1e-10
        assert abs(bessel_recursive(3, k, np.zeros(3), RULE2[k]) - 1) < 1e-10
    assert abs(bessel_k(2, 0, np.zeros(2), None) - 1) < 1e-15


def test_k_axis_independence_and_path_agreement():
    rng = np.random.default_rng(30)
    rule = RULE3[1.0]
    for _ in range(5):
        y = rng.uniform(-1, 1, size=3)
        coset = [bessel_k(3, 1.0, y, rule, path="coset", ell=ell, imaginary=True)
                 for ell in (1, 2, 3)]
        assert abs(coset[0] - coset[1]) < 1e-12
        assert abs(coset[0] - coset[2]) < 1e-12
        direct = bessel_k(3, 1.0, y, rule, path="direct", imaginary=True)
        assert abs(direct - coset[0]) < 1e-10
    with pytest.raises(ValueError):
        bessel_k(3, 1.0, np.zeros(3), rule, path="average")


def test_k_permutation_invariance_and_boundedness():
    rng = np.random.default_rng(31)
    rule = RULE3[0.5]
    for _ in range(5):
        y = rng.uniform(-2, 2, size=3)
        a = bessel_k(3, 0.5, y, rule, imaginary=True)
        b = bessel_k(3, 0.5, y[[2, 0, 1]], rule, imaginary=True)
        assert abs(a - b) < 1e-10
        assert abs(a) <= 1.0 + 1e-12


def test_exp_axis_is_intertwined_exponential():
    kp = KappaParams(3, 1)
    rule = RULE3[1.0]
    rng = np.random.default_rng(32)
    for ell in (1, 3):
        y = rng.uniform(-1, 1, size=3)
        got = dunkl_exp_axis(ell, y, kp, rule)
        want = vk_axis(AxisFunction(ell=ell, profile=np.exp), y, kp, rule)
        assert abs(got - want) < 1e-13
        assert abs(dunkl_exp_axis(ell, y, kp, rule, imaginary=True)) <= 1.0 + 1e-12
        assert abs(dunkl_exp_axis(ell, np.zeros(3), kp, rule) - 1) < 1e-12
    assert abs(dunkl_exp_axis(2, np.array([0.0, 0.7, 0.0]), KappaParams(3, 0), None)
               - math.exp(0.7)) < 1e-15


def test_closed_form_matches_quadrature():
    rng = np.random.default_rng(33)
    for k, rule in RULE2.items():
        for _ in range(20):
            x = rng.uniform(-1, 1, size=2)
            y = rng.uniform(-1, 1, size=2)
            dev = abs(bessel_k2_closed(k, x, y) - bessel_k2_direct(k, x, y, rule))
            assert dev <= 1e-9


def test_closed_form_small_argument_branch():
    # (x1-x2)(y1-y2) below the series cutoff
    x = np.array([0.5 + 5e-4, 0.5 - 5e-4])
    y = np.array([0.9, 0.4])
    for k, rule in RULE2.items():
        dev = abs(bessel_k2_closed(k, x, y) - bessel_k2_direct(k, x, y, rule))
        assert dev <= 1e-10


def test_closed_form_phase_free_case_is_real():
    # x2 = -x1 and y2 = -y1 kill the phase factor
    x = np.array([0.6, -0.6])
    y = np.array([0.8, -0.8])
    val = bessel_k2_closed(1.5, x, y)
    assert val.imag == 0.0
    direct = bessel_k2_direct(1.5, x, y, RULE2[1.5])
    assert abs(direct.imag) < 1e-12
    assert abs(val.real - direct.real) < 1e-10


def test_recursion_matches_direct():
    rng = np.random.default_rng(34)
    samples = [rng.uniform(-1, 1, size=3) for _ in range(5)]
    samples.append(np.array([0.3, -0.6, 0.0]))  # vanishing last component
    for k in (0.5, 1.0):
        for y in samples:
            got = bessel_recursive(3, k, y, RULE2[k])
            want = bessel_k(3, k, y, RULE3[k], path="direct", imaginary=True)
            assert abs(got - want) <= 1e-9


def test_recursion_argument_errors():
    with pytest.raises(ValueError):
        bessel_recursive(2, 1.0, np.zeros(2), RULE2[1.0])
    with pytest.raises(ValueError):
        bessel_recursive(3, 0, np.zeros(3), None)
    with pytest.raises(ValueError):
        bessel_recursive(3, 1.0, np.zeros(3), RULE3[1.0])  # inner rule must be d-1


def test_closed_form_report_structure():
    rep = closed_form_report(1.5, RULE2[1.5], n_samples=10)
    assert rep["adopted"] == "gamma_only_base4"
    assert rep["gamma_only_base4"]["zero_argument_limit"] == 1.0
    assert rep["gamma_only_base4"]["max_abs_dev_vs_quadrature"] <= 1e-9
    alt = math.sqrt(math.pi) * 2.0 ** (-1.0)
    assert abs(rep["sqrt_pi_base2"]["constant_ratio_to_adopted"] - alt) < 1e-15


def test_real_argument_paths_agree():
    rng = np.random.default_rng(35)
    y = rng.uniform(-1, 1, size=2)
    a = bessel_k(2, 1.0, y, RULE2[1.0], path="direct", imaginary=False)
    b = bessel_k(2, 1.0, y, RULE2[1.0], path="coset", imaginary=False)
    assert abs(a - b) < 1e-12
    # real-argument K is an average of exponentials, hence real and positive
    assert a.imag == 0.0 and a.real > 0.0
