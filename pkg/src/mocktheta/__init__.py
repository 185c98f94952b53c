"""Exact verification of the mock theta conjectures.

The package proves the ten identities by exact arithmetic in Q(zeta_240):
q-series with rational exponents and cyclotomic coefficients are compared
coefficientwise past their Sturm-type bound, the vector-valued completions
are checked against the Weil representation on Z/120, and the
nonholomorphic transformation laws are spot-checked numerically.
"""

from .cyclofield import QQ, CycloNum, FieldAutomorphism, zeta
from .errors import (
    ConvergenceError,
    InsufficientPrecisionError,
    MockThetaError,
    PrecisionRefusalError,
    UnsupportedEvaluationError,
)
from .qseries import QSeries
from .specialforms import (
    CompletedFunction,
    CompletionTerm,
    IDENTITY_NAMES,
    build_F,
    build_G,
    completed,
    mock_theta,
    verify_identity,
)
from .modgroup import CuspPoint, GroupContext, cusp_representatives, index, sturm_bound
from .weilrep import check_vanishing, metaplectic_relation, verify_intertwining
from .analytic import (
    EvalOptions,
    R_integral,
    check_S_transformation,
    check_T_transformation,
    eval_completed,
    eval_qseries,
    unary_theta,
)

__version__ = "1.0.0"

__all__ = [
    "QQ",
    "CycloNum",
    "FieldAutomorphism",
    "zeta",
    "QSeries",
    "CompletedFunction",
    "CompletionTerm",
    "IDENTITY_NAMES",
    "build_F",
    "build_G",
    "completed",
    "mock_theta",
    "verify_identity",
    "CuspPoint",
    "GroupContext",
    "cusp_representatives",
    "index",
    "sturm_bound",
    "check_vanishing",
    "metaplectic_relation",
    "verify_intertwining",
    "EvalOptions",
    "R_integral",
    "check_S_transformation",
    "check_T_transformation",
    "eval_completed",
    "eval_qseries",
    "unary_theta",
    "MockThetaError",
    "ConvergenceError",
    "InsufficientPrecisionError",
    "PrecisionRefusalError",
    "UnsupportedEvaluationError",
    "__version__",
]
