"""Rational cubic fractal interpolation splines with linear denominators.

Construction and exact evaluation of the self-referential spline, Peano
kernel error bounds, and parameter selection for curves constrained to lie
above or below a piecewise linear or quadratic bound.
"""
__version__ = "0.1.0"

from .classical import (
    CubicBernstein,
    ShapeParams,
    degree_elevate_linear,
    eval_classical,
    eval_classical_values_only,
    linear_times_denominator,
    quadratic_times_denominator,
    sup_bound_classical,
)
from .constraints import (
    BoundPiece,
    BoundSpec,
    ConstraintCertificate,
    alpha_cap,
    check_conditions,
    check_empirical,
    check_linear_conditions,
    check_quadratic_conditions,
    compute_K,
    compute_M,
    feasibility_lambda,
    lower_to_fit,
    mirror_below,
    solve_params,
)
from .error_analysis import (
    ErrorReport,
    convergence_experiment,
    local_error_bound,
    local_error_constant,
    peano_kernel,
    total_error_bound,
)
from .errors import FractalSplineError
from .fractal import (
    FractalSplineModel,
    base_function_strategy,
    build_model,
    eval_orbit,
    eval_point,
    eval_points,
    perturbation_bound,
    sample_uniform,
)
from .mesh import InterpolationData, Mesh, estimate_derivatives, validate
