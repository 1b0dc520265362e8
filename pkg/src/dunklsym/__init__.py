"""Dunkl intertwining operator for symmetric groups.

Exact rational Dunkl operators and intertwining images, Gauss-Jacobi
quadrature on the simplex and the sphere, spherical h-harmonic bases and
reproducing kernels, generalized Bessel functions along independent routes,
and Cesaro summability experiments at the coordinate vectors.
"""

__version__ = "0.1.0"

from .bessel import (
    bessel_k,
    bessel_k2_closed,
    bessel_k2_direct,
    bessel_recursive,
    classical_bessel_j,
    closed_form_report,
    dunkl_exp_axis,
)
from .harmonics import (
    HarmonicBasis,
    SphereRule,
    build_sphere_rule,
    harmonic_dim,
    hharmonic_basis,
    hweight,
    norm_const_a,
    repro_kernel_axis,
    repro_kernel_basis,
    surface_area,
)
from .intertwine import (
    AxisFunction,
    verify_intertwining,
    vk_axis,
    vk_d2_generic,
    vk_d2_poly_exact,
    vk_monomial_exact,
    vk_sphere_average,
    vk_z2d,
)
from .orthopoly import (
    CesaroOrder,
    JacobiParams,
    cesaro_kernel_endpoint,
    cesaro_weights,
    gegenbauer_eval,
    jacobi_all,
    jacobi_eval,
    jacobi_h_norm,
    kernel_normalizer,
    szego_bound_fit,
    zn_eval,
)
from .polycore import (
    KappaParams,
    Polynomial,
    divided_difference,
    dunkl_apply,
    dunkl_laplacian,
    partial_derivative,
    transposition_action,
)
from .simplexquad import (
    MomentValidationError,
    SimplexRule,
    build_rule,
    dirichlet_moment,
    gauss_jacobi01,
    integrate,
)
from .summability import (
    SweepRecord,
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

__all__ = [
    "__version__",
    "AxisFunction",
    "CesaroOrder",
    "HarmonicBasis",
    "JacobiParams",
    "KappaParams",
    "MomentValidationError",
    "Polynomial",
    "SimplexRule",
    "SphereRule",
    "SweepRecord",
    "bessel_k",
    "bessel_k2_closed",
    "bessel_k2_direct",
    "bessel_recursive",
    "build_rule",
    "build_sphere_rule",
    "cesaro_kernel_axis",
    "cesaro_kernel_endpoint",
    "cesaro_mean_at_axis",
    "cesaro_weights",
    "classical_bessel_j",
    "classify_growth",
    "closed_form_report",
    "critical_sweep",
    "default_sample_points",
    "dirichlet_moment",
    "divided_difference",
    "dunkl_apply",
    "dunkl_exp_axis",
    "dunkl_laplacian",
    "estimate_check",
    "gauss_jacobi01",
    "gegenbauer_eval",
    "harmonic_dim",
    "hharmonic_basis",
    "hweight",
    "integrate",
    "jacobi_all",
    "jacobi_eval",
    "jacobi_h_norm",
    "kernel_bound_check",
    "kernel_normalizer",
    "knd_positivity_check",
    "lebesgue_constant",
    "lebesgue_sweep",
    "norm_const_a",
    "partial_derivative",
    "repro_kernel_axis",
    "repro_kernel_basis",
    "surface_area",
    "szego_bound_fit",
    "transposition_action",
    "verify_intertwining",
    "vk_axis",
    "vk_d2_generic",
    "vk_d2_poly_exact",
    "vk_monomial_exact",
    "vk_sphere_average",
    "vk_z2d",
]
