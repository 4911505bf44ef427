"""Finite-dimensional Gaussian Wick calculus and numerical checks of Wick-product inequalities."""

from .chaos import (ChaosExpansion, MultiIndex, chaos_eval, exponential_chaos, exponential_eval,
                    exponential_tail_bound, hermite_eval, multi_indices, s_transform,
                    second_quantization, tensor_product, wick_power, wick_product)
from .checks import (CheckReport, constants_identity_suite, full_holder_ratio, holder_wick_ratio,
                     minimality_counterexample, nelson_ratio, sharpness_witness,
                     tensorization_check, verify_conv_wick_identity)
from .errors import (BoundaryDecayError, ConvergenceError, DimensionMismatch, ExponentError,
                     WickLabError, ZeroNormError)
from .exponents import (ExponentTuple, LiebParams, conjugate_exponent, full_holder_solve,
                        nelson_exponents, sharp_young_constant)
from .lieb import GaussianTrial, lieb_closed_form, lieb_objective, lieb_sup_search
from .numerics import (GridFunction, GridSpec, QuadratureRule, chaos_lp_norm, chaos_projection,
                       convolve_normalized, gauss_hermite_rule, lp_norm_gaussian,
                       lp_norm_lebesgue, polynomial_lp_norm, wick_by_projection)

__version__ = "0.1.0"
