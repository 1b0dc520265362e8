"""The intertwining operator V_kappa for S_d.

V_kappa is the degree-preserving linear operator with D_i V = V d/dx_i and
V 1 = 1.  For functions of a single coordinate, F(x) = f(x_ell), it has the
simplex representation

    V F(x) = c_kappa int_T f(x_1 t_0 + ... + x_d t_{d-1})
                          t_{ell-1} (t_0 ... t_{d-1})^(kappa-1) dt,

with c_kappa = Gamma(d kappa + 1) / (kappa Gamma(kappa)^d).  This module
provides that representation numerically (vk_axis), its exact polynomial
image on monomials (vk_monomial_exact, rational in kappa), an exact
mechanical verification of the intertwining relation, the full two-variable
d = 2 representation, the Z_2^d product-group analogue used for comparison,
and the sphere-average identity relating V to a one-dimensional Gegenbauer
integral.

No representation is provided for generic multivariate arguments when d > 2;
the AxisFunction type makes the restriction explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from .polycore import (
    KappaParams,
    Polynomial,
    dunkl_apply,
)
from .simplexquad import SimplexRule, integrate


@dataclass(frozen=True)
class AxisFunction:
    """F(x_1, ..., x_d) = profile(x_ell): the single-component functions
    V_kappa has a simplex representation for."""

    ell: int
    profile: Callable[[np.ndarray], np.ndarray]


def _check_rule(params: KappaParams, rule: SimplexRule) -> None:
    if rule.d != params.d or abs(rule.kappa - params.kappa_float) > 1e-13:
        raise ValueError(
            f"rule is for (d={rule.d}, kappa={rule.kappa}), "
            f"params are (d={params.d}, kappa={params.kappa_float})"
        )


def vk_axis(F: AxisFunction, x, params: KappaParams, rule: SimplexRule | None) -> float:
    """V_kappa F at the point x for a single-component F.

    The factor t_{ell-1} is part of the integrand so one rule per (d, kappa)
    serves every axis.  kappa = 0 short-circuits to the identity operator."""
    x = np.asarray(x, dtype=float)
    if x.shape != (params.d,):
        raise ValueError(f"x must have shape ({params.d},)")
    if not 1 <= F.ell <= params.d:
        raise ValueError(f"axis {F.ell} out of range 1..{params.d}")
    if params.kappa == 0:
        return float(np.asarray(F.profile(np.asarray([x[F.ell - 1]])))[0])
    _check_rule(params, rule)
    values = integrate(
        rule, lambda T: F.profile(T @ x) * T[:, F.ell - 1]
    )
    return params.c_kappa * values


def _pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def vk_monomial_exact(n: int, ell: int, params: KappaParams) -> Polynomial:
    """V_kappa[x_ell^n] as an exact polynomial, rational in kappa.

    Expanding the simplex representation by the multinomial theorem and
    integrating with the closed-form Dirichlet moments gives

        V[x_ell^n] = sum_{|alpha| = n} multinomial(n, alpha)
                     (kappa+1)_{alpha_ell} prod_{i != ell} (kappa)_{alpha_i}
                     / (d kappa + 1)_n  *  x^alpha.

    The kappa = 0 case degenerates correctly to x_ell^n (only alpha = n e_ell
    survives), so no special-casing is needed."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    d = params.d
    if not 1 <= ell <= d:
        raise ValueError(f"axis {ell} out of range 1..{d}")
    kappa = params.kappa
    denom = _pochhammer(d * kappa + 1, n)
    terms: dict[tuple[int, ...], Fraction] = {}
    for alpha in product(range(n + 1), repeat=d):
        if sum(alpha) != n:
            continue
        mult = 1
        rem = n
        for a in alpha:
            mult *= math.comb(rem, a)
            rem -= a
        num = _pochhammer(kappa + 1, alpha[ell - 1])
        for i, a in enumerate(alpha):
            if i != ell - 1:
                num *= _pochhammer(kappa, a)
        coef = mult * num / denom
        if coef != 0:
            terms[alpha] = coef
    return Polynomial(d, terms)


def verify_intertwining(n_max: int, params: KappaParams) -> dict:
    """Check D_i V[x_ell^n] = V[d/dx_i x_ell^n] exactly for all ell, n, i.

    The right side is n * V[x_ell^(n-1)] when i = ell and the zero polynomial
    otherwise.  Every comparison is an exact rational polynomial identity.
    Returns {"passed": bool, "checks": int, "failed": [(ell, n, i), ...]}."""
    d = params.d
    images = {}
    for ell in range(1, d + 1):
        for n in range(n_max + 1):
            images[(ell, n)] = vk_monomial_exact(n, ell, params)
    failed = []
    checks = 0
    for ell in range(1, d + 1):
        for n in range(n_max + 1):
            v = images[(ell, n)]
            for i in range(1, d + 1):
                lhs = dunkl_apply(v, i, params)
                if i == ell and n >= 1:
                    rhs = images[(ell, n - 1)] * n
                else:
                    rhs = Polynomial.zero(d)
                checks += 1
                if lhs != rhs:
                    failed.append({"ell": ell, "n": n, "i": i})
    return {"passed": not failed, "checks": checks, "failed": failed}


def vk_d2_generic(f, x, params: KappaParams, rule: SimplexRule) -> float:
    """V_kappa f at x in R^2 for a generic two-variable f.

    Representation: c_kappa int f(x_1 t_0 + x_2 t_1, x_1 t_1 + x_2 t_0)
    t_0^kappa t_1^(kappa-1) dt.  The asymmetric extra power of t_0 rides in
    the integrand on top of a standard symmetric-weight rule."""
    if params.d != 2:
        raise ValueError("vk_d2_generic requires d = 2")
    x = np.asarray(x, dtype=float)
    if params.kappa == 0:
        return float(np.asarray(f(np.asarray([x[0]]), np.asarray([x[1]])))[0])
    _check_rule(params, rule)

    def integrand(T):
        u = x[0] * T[:, 0] + x[1] * T[:, 1]
        v = x[0] * T[:, 1] + x[1] * T[:, 0]
        return np.asarray(f(u, v)) * T[:, 0]

    return params.c_kappa * integrate(rule, integrand)


def vk_d2_poly_exact(p: Polynomial, params: KappaParams) -> Polynomial:
    """Exact V_kappa image of a bivariate polynomial via the d=2 representation.

    For a monomial x^a y^b the expansion of f(x_1 t_0 + x_2 t_1, x_1 t_1 +
    x_2 t_0) against the weight t_0^kappa t_1^(kappa-1) integrates to
    Pochhammer ratios: the (t_0^p t_1^q) moment times c_kappa equals
    (kappa+1)_p (kappa)_q / (2 kappa + 1)_{p+q}."""
    if params.d != 2 or p.dim != 2:
        raise ValueError("vk_d2_poly_exact requires d = 2")
    kappa = params.kappa
    out = Polynomial.zero(2)
    cache: dict[tuple[int, int], Fraction] = {}

    def cmoment(pw: int, qw: int) -> Fraction:
        key = (pw, qw)
        if key not in cache:
            cache[key] = (
                _pochhammer(kappa + 1, pw)
                * _pochhammer(kappa, qw)
                / _pochhammer(2 * kappa + 1, pw + qw)
            )
        return cache[key]

    for (a, b), coef in p.terms.items():
        terms: dict[tuple[int, ...], Fraction] = {}
        for i in range(a + 1):
            for j in range(b + 1):
                c = (
                    coef
                    * math.comb(a, i)
                    * math.comb(b, j)
                    * cmoment(i + b - j, a - i + j)
                )
                mono = (i + j, a + b - i - j)
                terms[mono] = terms.get(mono, Fraction(0)) + c
        out = out + Polynomial(2, terms)
    return out


def vk_z2d(f, x, kappas, order: int = 48) -> float:
    """V_kappa f(x) for the sign-change group Z_2^d with per-axis multiplicities.

    Representation: normalized tensor integral of f(x_1 t_1, ..., x_d t_d)
    against prod (1 + t_i)(1 - t_i^2)^(kappa_i - 1) on [-1, 1]^d; each axis
    is a Gauss-Jacobi rule normalized to unit mass, and kappa_i = 0 axes
    degenerate to the point mass at t_i = 1."""
    x = np.asarray(x, dtype=float)
    kappas = [float(k) for k in kappas]
    d = len(x)
    if len(kappas) != d:
        raise ValueError("kappas must match the dimension of x")
    if any(k < 0 for k in kappas):
        raise ValueError("multiplicities must be >= 0")
    axes = []
    for k in kappas:
        if k == 0:
            axes.append((np.array([1.0]), np.array([1.0])))
        else:
            t, w = roots_jacobi(order, k - 1.0, k - 1.0)
            w = w * (1 + t)
            axes.append((t, w / w.sum()))
    grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    T = np.stack([g.ravel() for g in grids], axis=-1)
    W = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    return float(np.dot(W, np.asarray(f(T * x))))


def vk_sphere_average(f, x, params: KappaParams, sphere_rule) -> tuple[float, float]:
    """Both sides of the sphere-average identity

        a_kappa int_S V[f(<x, .>)](y) h^2(y) dsigma(y)
            = b_lambda int_{-1}^{1} f(|x| t) (1 - t^2)^(lambda - 1/2) dt.

    x must be a multiple of a coordinate vector (the only case where
    V[f(<x, .>)] is a single-component function with a known representation).
    Returns (lhs, rhs) computed independently; the caller asserts closeness."""
    from .harmonics import hweight  # local import to avoid a cycle

    x = np.asarray(x, dtype=float)
    ell = int(np.argmax(np.abs(x))) + 1
    r = x[ell - 1]
    rest = np.delete(x, ell - 1)
    if np.max(np.abs(rest), initial=0.0) > 1e-12 * max(1.0, abs(r)):
        raise ValueError("x must be a multiple of a coordinate vector e_ell")
    lam = float(params.lambda_kappa)

    from .simplexquad import build_rule

    rule = build_rule(params.d, params.kappa_float, 48) if params.kappa != 0 else None
    F = AxisFunction(ell=ell, profile=lambda s: np.asarray(f(r * s), dtype=float))
    sphere_vals = np.array(
        [vk_axis(F, y, params, rule) for y in sphere_rule.nodes]
    )
    h2 = hweight(sphere_rule.nodes, params) ** 2
    lhs = params.a_kappa * float(np.dot(sphere_rule.weights, sphere_vals * h2))

    t, w = roots_jacobi(64, lam - 0.5, lam - 0.5)
    b_lam = math.exp(math.lgamma(lam + 1) - 0.5 * math.log(math.pi) - math.lgamma(lam + 0.5))
    rhs = b_lam * float(np.dot(w, np.asarray(f(abs(r) * t), dtype=float)))
    return lhs, rhs
