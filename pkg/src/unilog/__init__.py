"""Exactly Hermitian (and self-dual) logarithms of near-unitary matrices."""

from unilog.core import (
    ConvergenceError,
    EigenFactorization,
    LinAlgError,
    SchurFactorization,
    SingularMatrixError,
    eig_via_schur,
    expm,
    frobenius_norm,
    operator_norm,
    schur,
    solve,
)
from unilog.logs import (
    Algorithm,
    UnitaryLogResult,
    backward_error,
    deviation_from_unitary,
    hermitian_part,
    log_unitary_diagonalize,
    log_unitary_newton_schur,
    log_unitary_polar_schur,
    log_unitary_schur,
    phase_normalize_diagonal,
    principal_log_diagonal,
)
from unilog.polar import newton_step, newton_two_step, polar_unitary
from unilog.selfdual import (
    StructureError,
    SymplecticSchurFactorization,
    dual,
    log_unitary_diagonalize_selfdual,
    log_unitary_selfdual,
    pvl_reduce,
    selfdual_part,
    selfdual_schur,
)

__version__ = "0.1.0"
