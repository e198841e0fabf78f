"""Exact spherical summation of arithmetic functions of GCD and LCM.

The package evaluates k-dimensional sums of f(gcd) and f(lcm) over lattice
points in a ball by independent exact methods, computes every asymptotic
main-term constant with a rigorous truncation bound, and runs desk-scale
verification sweeps against the predicted growth.
"""

from .arith import (
    FunctionSpec,
    FunctionTable,
    SDescriptor,
    dirichlet_convolve,
    eval_point,
    moebius_transform_inverse,
    parse_function,
    sieve_table,
)
from .constants import (
    ConstantValue,
    Truncation,
    alternating_binomial_mean,
    bounded_series_constant,
    class_a_spot_check,
    fseta_prime_constant,
    lcm_main_constant,
    mean_value_constant,
    prime_log_sum_constant,
    wallis_cosine_integral,
    zeta,
)
from .errors import ComputationError, SizeGuardError, UsageError
from .lattice import (
    EllipsoidQuery,
    RkTable,
    build_rk,
    ellipsoid_count_n,
    ellipsoid_main_term,
    ellipsoid_product_sum_n,
    lattice_point_count_brute,
    unit_ball_volume,
)
from .sums import (
    SumQuery,
    SumResult,
    n_sum_from_z_sums,
    n_vector_from_z_vector,
    spherical_sum,
    sum_gcd_brute,
    sum_gcd_identity,
    sum_lcm_brute,
    sum_lcm_convolution,
    z_sum_from_n_sums,
    z_vector_from_n_vector,
)
from .verify import (
    THEOREM_IDS,
    SweepRecord,
    TheoremSpec,
    emit_report,
    fit_exponent,
    geometric_grid,
    main_term,
    make_spec,
    sweep,
    write_report_files,
)

__version__ = "0.1.0"

__all__ = [
    "FunctionSpec", "FunctionTable", "SDescriptor",
    "dirichlet_convolve", "eval_point", "moebius_transform_inverse",
    "parse_function", "sieve_table",
    "ConstantValue", "Truncation", "alternating_binomial_mean",
    "bounded_series_constant", "class_a_spot_check", "fseta_prime_constant",
    "lcm_main_constant", "mean_value_constant", "prime_log_sum_constant",
    "wallis_cosine_integral", "zeta",
    "ComputationError", "SizeGuardError", "UsageError",
    "EllipsoidQuery", "RkTable", "build_rk", "ellipsoid_count_n",
    "ellipsoid_main_term", "ellipsoid_product_sum_n",
    "lattice_point_count_brute", "unit_ball_volume",
    "SumQuery", "SumResult", "n_sum_from_z_sums", "n_vector_from_z_vector",
    "spherical_sum", "sum_gcd_brute", "sum_gcd_identity", "sum_lcm_brute",
    "sum_lcm_convolution", "z_sum_from_n_sums", "z_vector_from_n_vector",
    "THEOREM_IDS", "SweepRecord", "TheoremSpec", "emit_report",
    "fit_exponent", "geometric_grid", "main_term", "make_spec", "sweep",
    "write_report_files",
    "__version__",
]
