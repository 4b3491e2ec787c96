"""Kernel-weighted extension of the beta function and its relatives.

Public surface: the Bessel-Struve kernel (kernel), tanh-sinh/exp-sinh
quadrature (quadrature), the extended beta function with its
representations, recurrence, summations and incomplete variants (extbeta),
the associated probability distribution (distribution), the extended
Gauss/confluent hypergeometric functions (hypergeometric), and a CLI with
a `verify` mode that numerically exercises every identity.
"""
from .distribution import ExtBetaDistribution
from .errors import (CancellationLoss, DomainError, ExbetaError,
                     NonConvergence, NonFinite)
from .extbeta import (ExtBetaParams, ext_beta, ext_beta_recurrence_rhs,
                      ext_beta_rep, ext_beta_sum_one_minus,
                      ext_beta_sum_shift, incomplete_lower, incomplete_upper)
from .hypergeometric import (ConfluentParams, GaussParams,
                             confluent_derivative, confluent_integral,
                             confluent_integral_alt, confluent_series,
                             confluent_transform_rhs, gauss_derivative,
                             gauss_generating_lhs, gauss_integral,
                             gauss_series, gauss_transform_rhs, pochhammer)
from .kernel import (KernelOrder, kernel_closed_form, kernel_eval,
                     kernel_integral_rep, kernel_series)
from .quadrature import (QuadConfig, QuadResult, integrate_finite,
                         integrate_semi_infinite)
from .series import SeriesResult

__version__ = "0.1.0"

__all__ = [
    "CancellationLoss",
    "ConfluentParams",
    "DomainError",
    "ExbetaError",
    "ExtBetaDistribution",
    "ExtBetaParams",
    "GaussParams",
    "KernelOrder",
    "NonConvergence",
    "NonFinite",
    "QuadConfig",
    "QuadResult",
    "SeriesResult",
    "confluent_derivative",
    "confluent_integral",
    "confluent_integral_alt",
    "confluent_series",
    "confluent_transform_rhs",
    "ext_beta",
    "ext_beta_recurrence_rhs",
    "ext_beta_rep",
    "ext_beta_sum_one_minus",
    "ext_beta_sum_shift",
    "gauss_derivative",
    "gauss_generating_lhs",
    "gauss_integral",
    "gauss_series",
    "gauss_transform_rhs",
    "incomplete_lower",
    "incomplete_upper",
    "integrate_finite",
    "integrate_semi_infinite",
    "kernel_closed_form",
    "kernel_eval",
    "kernel_integral_rep",
    "kernel_series",
    "pochhammer",
]
