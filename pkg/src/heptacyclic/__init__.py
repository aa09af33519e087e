"""Determinants, inverses and linear solvers for cyclic heptadiagonal matrices.

The exact lane factors the matrix with bordered LU recurrences over
arbitrary-precision rationals; quantities that would be exactly zero (pivots,
or the C band entries the inversion divides by) are replaced by a symbolic
indeterminate ``t`` so the computation never breaks down, and results are
read off at t = 0.  A float64 lane (numba-compiled, with a pure-numpy
fallback selected by ``HEPTACYCLIC_PURE_NUMPY=1``) covers large orders where
exactness is not required.
"""

from .errors import (
    DegreeCapError,
    HeptaError,
    InternalContractError,
    NearSingularPivotError,
    PoleAtZeroError,
    SingularMatrixError,
)
from .factor import (
    DetResult,
    FactorData,
    determinant,
    factorize,
    lu_substitute,
    materialize_LU,
)
from .inverse import InverseResult, back_columns, invert, inverse_float, seed_columns
from .matrix import (
    BAND_NAMES,
    CyclicHeptaMatrix,
    DenseMatrix,
    build,
    dense_from_csv,
    dense_to_csv,
    from_dense,
    matrix_from_json,
    matrix_to_json,
    random_instance,
    to_dense,
)
from .oracle import CompareReport, OracleReport, compare, dense_det, dense_inverse, oracle_report
from .scalars import (
    Poly,
    RatFun,
    Rational,
    T,
    eval_at_zero,
    format_scalar,
    parse_scalar,
    poly_gcd,
    ratfun_normalize,
    set_degree_cap,
)
from .solve import (
    SolveReport,
    solve_many,
    solve_via_inverse,
    solve_via_lu,
    solve_via_lu_float,
)

__version__ = "0.1.0"

__all__ = [
    "BAND_NAMES",
    "CompareReport",
    "CyclicHeptaMatrix",
    "DegreeCapError",
    "DenseMatrix",
    "DetResult",
    "FactorData",
    "HeptaError",
    "InternalContractError",
    "InverseResult",
    "NearSingularPivotError",
    "OracleReport",
    "Poly",
    "PoleAtZeroError",
    "RatFun",
    "Rational",
    "SingularMatrixError",
    "SolveReport",
    "T",
    "back_columns",
    "build",
    "compare",
    "dense_det",
    "dense_from_csv",
    "dense_inverse",
    "dense_to_csv",
    "determinant",
    "eval_at_zero",
    "factorize",
    "format_scalar",
    "from_dense",
    "invert",
    "inverse_float",
    "lu_substitute",
    "materialize_LU",
    "matrix_from_json",
    "matrix_to_json",
    "oracle_report",
    "parse_scalar",
    "poly_gcd",
    "random_instance",
    "ratfun_normalize",
    "seed_columns",
    "set_degree_cap",
    "solve_many",
    "solve_via_inverse",
    "solve_via_lu",
    "solve_via_lu_float",
    "to_dense",
]
