"""Quadrature on the homogeneous simplex with the Dirichlet weight.

The domain is T^d = {t in R^d : t_i >= 0, sum t_i = 1} written in homogeneous
coordinates (t_0, ..., t_{d-1}), integrated against d(t_1, ..., t_{d-1}) with
weight (t_0 ... t_{d-1})^(kappa - 1).  The rule tensorizes the triangular
substitution

    t_1 = u_1,  t_j = u_j (1-u_1) ... (1-u_{j-1}),  t_0 = (1-u_1) ... (1-u_{d-1}),

under which the weighted integral becomes a product of one-dimensional Beta
integrals: axis j (1-based) carries the weight u^(kappa-1) (1-u)^((d-j) kappa - 1),
because the Jacobian contributes (1-u_j)^(d-1-j) and the residual powers of
t_{j+1}, ..., t_0 supply the rest.  Each axis gets a Gauss-Jacobi rule.  Every
constructed rule is validated against the closed-form Dirichlet moments before
it is handed out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np
from scipy.special import roots_jacobi


def dirichlet_moment(d: int, kappa: float, alpha) -> float:
    """int_T t^alpha (t_0...t_{d-1})^(kappa-1) dt = prod Gamma(kappa+a_i) / Gamma(d kappa + |alpha|)."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != d or any(a < 0 for a in alpha):
        raise ValueError("alpha must be a length-d multi-index of non-negative integers")
    k = float(kappa)
    return math.exp(
        sum(math.lgamma(k + a) for a in alpha) - math.lgamma(d * k + sum(alpha))
    )


def _gamma_exact(q: Fraction) -> tuple[Fraction, int]:
    """Gamma(q) for positive integer or half-integer q, as (rational, pi_power)
    with value = rational * pi^(pi_power/2).  Uses Gamma(m + 1/2) =
    (2m)!/(4^m m!) sqrt(pi)."""
    if q <= 0:
        raise ValueError("need a positive argument")
    if q.denominator == 1:
        return Fraction(math.factorial(q.numerator - 1)), 0
    if q.denominator == 2:
        m = (q.numerator - 1) // 2
        return Fraction(math.factorial(2 * m), 4**m * math.factorial(m)), 1
    raise ValueError("argument is neither integer nor half-integer")


def dirichlet_moment_exact(d: int, kappa: Fraction, alpha) -> tuple[Fraction, int] | None:
    """Exact moment as (rational, pi_power) meaning rational * pi^(pi_power/2),
    available when kappa is an integer or half-integer; None otherwise."""
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if kappa.denominator not in (1, 2):
        return None
    alpha = tuple(int(a) for a in alpha)
    num = Fraction(1)
    pi_pow = 0
    for a in alpha:
        r, p = _gamma_exact(kappa + a)
        num *= r
        pi_pow += p
    r, p = _gamma_exact(d * kappa + sum(alpha))
    return num / r, pi_pow - p


def gauss_jacobi01(order: int, p: float, q: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss rule on [0,1] for the weight u^p (1-u)^q, exponents > -1."""
    if order < 1:
        raise ValueError("order must be >= 1")
    x, w = roots_jacobi(order, q, p)  # scipy weight: (1-x)^q (1+x)^p on [-1,1]
    return (x + 1) / 2, w * 0.5 ** (p + q + 1)


def default_order(degree: int) -> int:
    """Per-axis order for degree-n polynomial integrands along <x, t>."""
    return max(32, math.ceil(degree / 2) + 10)


@dataclass(frozen=True)
class SimplexRule:
    d: int
    kappa: float
    order: int
    nodes: np.ndarray  # (N, d) homogeneous coordinates, rows sum to 1
    weights: np.ndarray  # (N,)

    @property
    def mass(self) -> float:
        """Gamma(kappa)^d / Gamma(d kappa), the total weight."""
        return math.exp(self.d * math.lgamma(self.kappa) - math.lgamma(self.d * self.kappa))

    def __len__(self) -> int:
        return len(self.weights)


class MomentValidationError(RuntimeError):
    """A constructed rule failed the Dirichlet-moment battery."""


def _validate_moments(rule: SimplexRule, axes, max_total_degree: int, rtol: float = 1e-10):
    """Compare rule moments with dirichlet_moment for all |alpha| <= degree.

    Uses the tensor factorization of t^alpha over the substitution axes when
    the full-grid product would be large; both paths evaluate the same sums.
    """
    d = rule.d
    alphas = [
        a for a in product(range(max_total_degree + 1), repeat=d)
        if sum(a) <= max_total_degree
    ]
    use_grid = len(rule) * len(alphas) <= 2 * 10**7
    worst = 0.0
    worst_alpha = None
    for alpha in alphas:
        ref = dirichlet_moment(d, rule.kappa, alpha)
        if use_grid:
            got = float(np.dot(rule.weights, np.prod(rule.nodes ** np.asarray(alpha), axis=1)))
        else:
            # u_j exponent is alpha_j; (1-u_j) exponent is alpha_0 + sum_{i>j} alpha_i
            got = 1.0
            for j in range(1, d):
                u, w = axes[j - 1]
                got *= float(np.dot(w, u ** alpha[j] * (1 - u) ** (alpha[0] + sum(alpha[j + 1:]))))
        err = abs(got - ref) / abs(ref)
        if err > worst:
            worst, worst_alpha = err, alpha
    if worst > rtol:
        raise MomentValidationError(
            f"moment validation failed at alpha={worst_alpha}: rel err {worst:.3e} "
            f"(d={d}, kappa={rule.kappa}, order={rule.order})"
        )


def build_rule(d: int, kappa: float, per_axis_order: int) -> SimplexRule:
    """Tensor Gauss-Jacobi rule on T^d for the Dirichlet weight.

    The rule is exact for polynomials in t of total degree <= 2*order - 1 and
    is validated against closed-form moments up to degree min(6, 2*order - 1)
    before being returned; validation failure aborts construction.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    kappa = float(kappa)
    axes = [
        gauss_jacobi01(per_axis_order, kappa - 1.0, (d - j) * kappa - 1.0)
        for j in range(1, d)
    ]
    grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    U = np.stack([g.ravel() for g in grids], axis=-1)
    W = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
    n = U.shape[0]
    T = np.empty((n, d))
    rem = np.ones(n)
    for j in range(1, d):
        T[:, j] = U[:, j - 1] * rem
        rem = rem * (1 - U[:, j - 1])
    T[:, 0] = rem
    rule = SimplexRule(d=d, kappa=kappa, order=per_axis_order, nodes=T, weights=W)
    _validate_moments(rule, axes, min(6, 2 * per_axis_order - 1))
    return rule


def integrate(rule: SimplexRule, g) -> float | complex:
    """Sum w_k g(node_k) with numpy's deterministic pairwise summation.

    g receives the full (N, d) node array and must return a length-N vector
    (real or complex); non-finite values abort."""
    values = np.asarray(g(rule.nodes))
    if values.shape != (len(rule),):
        raise ValueError(f"integrand returned shape {values.shape}, expected ({len(rule)},)")
    if not np.all(np.isfinite(values)):
        raise ValueError("integrand produced non-finite values at quadrature nodes")
    return (rule.weights * values).sum()
