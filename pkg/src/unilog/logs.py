"""Hermitian logarithms of unitary and near-unitary matrices.

All algorithms return ``H`` with ``H* == H`` exactly and ``expm(-1j*H)``
close to the input. Internally each builds the skew-Hermitian
``L = Q log(D) Q*`` (``Q`` unitary, or merely invertible for the
diagonalization route) and returns ``H = 1j * L``, so ``H`` has spectrum
in ``[-pi, pi]``; an eigenvalue of ``U`` exactly at ``-1`` becomes ``-pi``.
"""

from dataclasses import dataclass
import enum
import time

import numpy as np

from unilog.core import (
    SingularMatrixError,
    adjoint,
    as_matrix,
    eig_via_schur,
    expm,
    frobenius_norm,
    operator_norm,
    schur,
    solve,
)
from unilog.polar import newton_two_step, polar_unitary

UNIMODULAR_TOL = 1e-8


class Algorithm(str, enum.Enum):
    DIAGONALIZE = "1"
    SCHUR = "3"
    POLAR_SCHUR = "4"
    NEWTON_SCHUR = "5"
    DIAGONALIZE_SELFDUAL = "1A"
    SELFDUAL = "6"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class UnitaryLogResult:
    h: np.ndarray
    deviation: float
    backward_error: float
    wall_time: float
    algorithm: Algorithm


def deviation_from_unitary(u):
    """``||U* U - I||`` in the operator norm."""
    u = as_matrix(u, "u")
    return operator_norm(adjoint(u) @ u - np.eye(u.shape[0]))


def backward_error(u, h):
    """``||expm(-1j*H) - U||`` in the operator norm."""
    u = as_matrix(u, "u")
    h = as_matrix(h, "h")
    return operator_norm(expm(-1j * h) - u)


def hermitian_part(h0):
    """``(H0 + H0*) / 2``; exactly Hermitian, and the identity on Hermitian input."""
    h0 = np.asarray(h0, dtype=np.complex128)
    return 0.5 * h0 + 0.5 * adjoint(h0)


def _phases(values):
    mod = np.abs(values)
    zero = np.flatnonzero(mod == 0.0)
    if zero.size:
        raise ValueError(f"zero diagonal entry at index {zero[0]}")
    return values / mod


def _angles(phases):
    theta = np.angle(phases)
    # the negative real axis itself belongs to +pi even when the imaginary
    # part is -0.0; a tiny negative imaginary part legitimately rounds to -pi
    theta[(theta == -np.pi) & (phases.imag == 0)] = np.pi
    return theta


def phase_normalize_diagonal(t):
    """Diagonal unitary ``D`` with ``D_jj = T_jj / |T_jj|``."""
    t = np.asarray(t, dtype=np.complex128)
    return np.diag(_phases(np.diag(t)))


def principal_log_diagonal(d):
    """Principal logarithm of a diagonal unitary: ``diag(1j*theta)``,
    ``theta`` in ``(-pi, pi]``."""
    d = np.asarray(d, dtype=np.complex128)
    values = np.diag(d)
    off = np.abs(np.abs(values) - 1.0)
    if off.size and off.max() > UNIMODULAR_TOL:
        j = int(off.argmax())
        raise ValueError(f"entry {j} has modulus {abs(values[j])!r}, not unimodular")
    return np.diag(1j * _angles(values))


def _log_from_unitary_basis(q, diag):
    # 1j * Q diag(1j*theta) Q* = -Q diag(theta) Q*
    theta = _angles(_phases(diag))
    return hermitian_part(-(q * theta) @ adjoint(q))


def _log_from_schur(v):
    fac = schur(v)
    return _log_from_unitary_basis(fac.q, np.diag(fac.t))


def log_from_diagonalization(w, eigenvalues):
    """``hermitian_part(1j * W log(D) W^{-1})`` with ``D`` the phases of
    ``eigenvalues``; the last three steps of the diagonalization route."""
    w = as_matrix(w, "w")
    theta = _angles(_phases(np.asarray(eigenvalues, dtype=np.complex128)))
    w_inv = solve(w, np.eye(w.shape[0], dtype=np.complex128))
    return hermitian_part(-(w * theta) @ w_inv)


def _diagonalize(u):
    eig = eig_via_schur(u)
    try:
        return log_from_diagonalization(eig.w, eig.eigenvalues)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"eigenvector matrix is singular (condition estimate {eig.condition:.3e})"
        ) from exc


def _run(u, algorithm, compute):
    u = as_matrix(u, "u")
    start = time.perf_counter()
    h = compute(u)
    wall = time.perf_counter() - start
    return UnitaryLogResult(
        h=h,
        deviation=deviation_from_unitary(u),
        backward_error=backward_error(u, h),
        wall_time=wall,
        algorithm=algorithm,
    )


def log_unitary_diagonalize(u):
    """Naive baseline: diagonalize with a general eigensolver, take logs of
    the eigenvalue phases, and symmetrize.

    There is no accuracy guarantee; with repeated eigenvalues near ``-1``
    the backward error is typically of order one. Raises
    :class:`SingularMatrixError` if the eigenvector matrix cannot be
    inverted.
    """
    return _run(u, Algorithm.DIAGONALIZE, _diagonalize)


def log_unitary_schur(u):
    """Logarithm from a Schur factorization, keeping only the phases of the
    triangular factor's diagonal."""
    return _run(u, Algorithm.SCHUR, _log_from_schur)


def log_unitary_polar_schur(u):
    """Schur logarithm of the exact unitary polar factor of ``u``."""
    return _run(u, Algorithm.POLAR_SCHUR, lambda v: _log_from_schur(polar_unitary(v)))


def log_unitary_newton_schur(u):
    """Schur logarithm after two Newton polar steps.

    For ``d = ||U*U - I|| <= 3/4`` and ``n >= 3`` the unitary ``QDQ*`` it
    exponentiates to satisfies
    ``||U - QDQ*|| <= 0.7 sqrt(n) d**2 + 0.7 d``.
    """
    return _run(u, Algorithm.NEWTON_SCHUR, lambda v: _log_from_schur(newton_two_step(v)))


def triangular_departure_bounds(t):
    """Compare two bounds on ``||T - diag(T)||_F`` for upper triangular ``T``.

    Returns ``(measured, unitary_bound, henrici_bound)`` where
    ``unitary_bound = sqrt(2(n-1)) ||T*T - I||^(1/2)`` (operator norm) and
    ``henrici_bound = ((n^3 - n)/12)^(1/4) ||T*T - TT*||_F^(1/2)``. Both are
    valid; which one is smaller depends on the matrix.
    """
    t = np.asarray(t, dtype=np.complex128)
    n = t.shape[0]
    th = adjoint(t)
    measured = frobenius_norm(t - np.diag(np.diag(t)))
    unitary = np.sqrt(2.0 * (n - 1)) * np.sqrt(operator_norm(th @ t - np.eye(n)))
    henrici = ((n ** 3 - n) / 12.0) ** 0.25 * np.sqrt(frobenius_norm(th @ t - t @ th))
    return measured, float(unitary), float(henrici)


GENERAL_ALGORITHMS = {
    Algorithm.DIAGONALIZE: log_unitary_diagonalize,
    Algorithm.SCHUR: log_unitary_schur,
    Algorithm.POLAR_SCHUR: log_unitary_polar_schur,
    Algorithm.NEWTON_SCHUR: log_unitary_newton_schur,
}
