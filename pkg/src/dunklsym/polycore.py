"""Exact sparse multivariate polynomials and Dunkl operators for the symmetric group.

A polynomial in d variables is stored as a map from exponent tuples to
``fractions.Fraction`` coefficients, so every operator in this module is exact:
no floating point enters until a polynomial is evaluated at a numeric point.
The Dunkl operator attached to the transposition group S_d acting on R^d is

    D_i f = d f / d x_i + kappa * sum_{j != i} (f(x) - f(x (i,j))) / (x_i - x_j),

where x(i,j) swaps coordinates i and j.  The difference quotient is a genuine
polynomial; it is computed by term-wise telescoping, never by evaluation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


class Polynomial:
    """Sparse polynomial over Q with a fixed ambient dimension.

    Zero coefficients are never stored; iteration order is the sorted order
    of exponent tuples, so serialization and printing are deterministic.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Monomial, Scalar] | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coef in terms.items():
                if len(mono) != dim:
                    raise ValueError(f"monomial {mono} does not have dimension {dim}")
                c = Fraction(coef)
                if c != 0:
                    self.terms[tuple(int(e) for e in mono)] = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(dim: int) -> "Polynomial":
        return Polynomial(dim)

    @staticmethod
    def constant(dim: int, value: Scalar) -> "Polynomial":
        return Polynomial(dim, {(0,) * dim: Fraction(value)})

    @staticmethod
    def variable(dim: int, i: int) -> "Polynomial":
        """The coordinate polynomial x_i, with i in 1..dim."""
        _check_axis(i, dim)
        exp = [0] * dim
        exp[i - 1] = 1
        return Polynomial(dim, {tuple(exp): Fraction(1)})

    @staticmethod
    def monomial(exponents: Iterable[int], coef: Scalar = 1) -> "Polynomial":
        exp = tuple(int(e) for e in exponents)
        return Polynomial(len(exp), {exp: Fraction(coef)})

    # -- ring operations ---------------------------------------------------

    def _compatible(self, other: "Polynomial") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._compatible(other)
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            c = out.get(mono, Fraction(0)) + coef
            if c == 0:
                out.pop(mono, None)
            else:
                out[mono] = c
        return Polynomial(self.dim, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = Fraction(other)
            return Polynomial(self.dim, {m: c * s for m, c in self.terms.items()})
        self._compatible(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = out.get(m, Fraction(0)) + c1 * c2
                if c == 0:
                    out.pop(m, None)
                else:
                    out[m] = c
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(int(e) for e in mono), Fraction(0))

    def sorted_terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        for mono in sorted(self.terms):
            yield mono, self.terms[mono]

    def __call__(self, x):
        """Evaluate at a point.

        Accepts a sequence of Fractions/ints (exact result) or floats/arrays
        (numeric result, vectorized over trailing axes when x is an ndarray
        of shape (..., dim))."""
        try:
            import numpy as np

            if isinstance(x, np.ndarray):
                acc = np.zeros(x.shape[:-1])
                for mono, coef in self.terms.items():
                    term = float(coef) * np.ones(x.shape[:-1])
                    for k, e in enumerate(mono):
                        if e:
                            term = term * x[..., k] ** e
                    acc = acc + term
                return acc
        except ImportError:  # pragma: no cover - numpy is a hard dependency
            pass
        if len(x) != self.dim:
            raise ValueError("point dimension mismatch")
        acc = Fraction(0) if all(isinstance(v, (int, Fraction)) for v in x) else 0.0
        for mono, coef in self.terms.items():
            term = coef if isinstance(acc, Fraction) else float(coef)
            for v, e in zip(x, mono):
                if e:
                    term = term * v**e
            acc = acc + term
        return acc

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        bits = []
        for mono, coef in self.sorted_terms():
            vars_part = "*".join(
                f"x{k+1}" + (f"^{e}" if e > 1 else "")
                for k, e in enumerate(mono)
                if e
            )
            bits.append(f"{coef}" + (f"*{vars_part}" if vars_part else ""))
        return "Polynomial(" + " + ".join(bits) + ")"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        obj = {
            "d": self.dim,
            "terms": [
                {"exp": list(mono), "num": coef.numerator, "den": coef.denominator}
                for mono, coef in self.sorted_terms()
            ],
        }
        return json.dumps(obj)

    @staticmethod
    def from_json(text: str) -> "Polynomial":
        obj = json.loads(text)
        terms = {
            tuple(t["exp"]): Fraction(t["num"], t["den"]) for t in obj["terms"]
        }
        return Polynomial(obj["d"], terms)


def _check_axis(i: int, dim: int) -> None:
    if not 1 <= i <= dim:
        raise ValueError(f"axis {i} out of range 1..{dim}")


# ---------------------------------------------------------------------------
# kappa parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KappaParams:
    """Multiplicity parameter kappa for S_d with the derived constants.

    lambda_kappa = C(d,2) kappa + (d-2)/2 is the Gegenbauer index of the
    reduced one-variable theory, critical_delta = lambda_kappa - (d-1) kappa
    the summability threshold at the coordinate vectors, and c_kappa the
    normalization of the simplex representation of the intertwining operator.
    kappa = 0 is admitted for the classical reductions (the operator is then
    the identity and c_kappa degenerates to None).
    """

    d: int
    kappa: Fraction
    lambda_kappa: Fraction = field(init=False)
    critical_delta: Fraction = field(init=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("need d >= 2")
        kappa = Fraction(self.kappa)
        if kappa < 0:
            raise ValueError("kappa must be >= 0")
        object.__setattr__(self, "kappa", kappa)
        lam = math.comb(self.d, 2) * kappa + Fraction(self.d - 2, 2)
        object.__setattr__(self, "lambda_kappa", lam)
        object.__setattr__(self, "critical_delta", lam - (self.d - 1) * kappa)

    @property
    def kappa_float(self) -> float:
        return float(self.kappa)

    @property
    def c_kappa(self) -> float | None:
        """Gamma(d kappa + 1) / (kappa Gamma(kappa)^d); None when kappa = 0."""
        if self.kappa == 0:
            return None
        k = self.kappa_float
        return math.exp(
            math.lgamma(self.d * k + 1) - math.lgamma(k + 1) - (self.d - 1) * math.lgamma(k)
        )

    @property
    def a_kappa(self) -> float:
        """Closed-form normalization making a_kappa * integral_S h^2 dsigma = 1."""
        d, k = self.d, self.kappa_float
        nck = math.comb(d, 2)
        omega = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
        log_val = (
            nck * k * math.log(2.0)
            + math.lgamma(nck * k + d / 2)
            - math.lgamma(d / 2)
            + sum(math.lgamma(k + 1) - math.lgamma(j * k + 1) for j in range(2, d + 1))
        )
        return math.exp(log_val) / omega

    @staticmethod
    def from_string(d: int, text: str, max_denominator: int = 10**6) -> "KappaParams":
        """Parse kappa from 'p/q' (exact) or a decimal (nearest rational)."""
        text = text.strip()
        if "/" in text:
            kappa = Fraction(text)
        else:
            kappa = Fraction(text).limit_denominator(max_denominator)
        return KappaParams(d, kappa)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    """Exact formal d/dx_i, axis i in 1..d."""
    _check_axis(i, p.dim)
    k = i - 1
    out: dict[Monomial, Fraction] = {}
    for mono, coef in p.terms.items():
        e = mono[k]
        if e == 0:
            continue
        m = list(mono)
        m[k] = e - 1
        out[tuple(m)] = coef * e
    return Polynomial(p.dim, out)


def transposition_action(p: Polynomial, i: int, j: int) -> Polynomial:
    """p(x (i,j)): swap variables x_i and x_j."""
    _check_axis(i, p.dim)
    _check_axis(j, p.dim)
    if i == j:
        raise ValueError("transposition needs i != j")
    a, b = i - 1, j - 1
    out: dict[Monomial, Fraction] = {}
    for mono, coef in p.terms.items():
        m = list(mono)
        m[a], m[b] = m[b], m[a]
        out[tuple(m)] = out.get(tuple(m), Fraction(0)) + coef
    return Polynomial(p.dim, out)


def divided_difference(p: Polynomial, i: int, j: int) -> Polynomial:
    """(p - p(x(i,j))) / (x_i - x_j), exact.

    Works monomial by monomial: for exponents (a, b) on axes (i, j) with
    a > b the quotient of x_i^a x_j^b - x_i^b x_j^a by x_i - x_j telescopes to
    x_i^b x_j^b (x_i^{a-b-1} + x_i^{a-b-2} x_j + ... + x_j^{a-b-1}).
    """
    _check_axis(i, p.dim)
    _check_axis(j, p.dim)
    if i == j:
        raise ValueError("divided difference needs i != j")
    a_ax, b_ax = i - 1, j - 1
    out: dict[Monomial, Fraction] = {}
    for mono, coef in p.terms.items():
        a, b = mono[a_ax], mono[b_ax]
        if a == b:
            continue
        sign = 1
        if a < b:
            a, b = b, a
            sign = -1
        base = list(mono)
        for r in range(a - b):
            base[a_ax] = b + (a - b - 1 - r)
            base[b_ax] = b + r
            m = tuple(base)
            c = out.get(m, Fraction(0)) + sign * coef
            if c == 0:
                out.pop(m, None)
            else:
                out[m] = c
    return Polynomial(p.dim, out)


def dunkl_apply(p: Polynomial, i: int, params: KappaParams) -> Polynomial:
    """The Dunkl operator D_i p for S_d with multiplicity params.kappa."""
    if p.dim != params.d:
        raise ValueError(f"polynomial dimension {p.dim} != params.d {params.d}")
    _check_axis(i, p.dim)
    out = partial_derivative(p, i)
    kappa = params.kappa
    if kappa != 0:
        for j in range(1, p.dim + 1):
            if j != i:
                out = out + divided_difference(p, i, j) * kappa
    return out


def dunkl_laplacian(p: Polynomial, params: KappaParams) -> Polynomial:
    """Delta_kappa p = sum_i D_i^2 p."""
    out = Polynomial.zero(p.dim)
    for i in range(1, p.dim + 1):
        out = out + dunkl_apply(dunkl_apply(p, i, params), i, params)
    return out
