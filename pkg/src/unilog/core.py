"""Dense complex matrix kernels: norms, Schur, eigenvectors, expm, solve.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every public
function accepts anything :func:`as_matrix` accepts and never mutates its
input.
"""

from dataclasses import dataclass
import math

import numpy as np

from unilog import _kernels

__all__ = [
    "LinAlgError",
    "SingularMatrixError",
    "ConvergenceError",
    "SchurFactorization",
    "EigenFactorization",
    "as_matrix",
    "frobenius_norm",
    "operator_norm",
    "schur",
    "eig_via_schur",
    "expm",
    "solve",
    "inv",
]

QR_DEFL_TOL = 1e-15
MAX_QR_SWEEPS = 30
SCHUR_RESIDUAL_TOL = 1e-13
SCHUR_UNITARITY_TOL = 1e-14
SCHUR_TRIANGULAR_TOL = 1e-13
OP_NORM_TOL = 1e-10
OP_NORM_MAX_ITER = 5000
EXPM_TOL = 1e-13
EXPM_MAX_NORM = 500.0
SINGULARITY_TOL = 1e-16
TIE_TOL = 1e-300
TIE_NUDGE = 1e-14

# Diagonal Pade(6, 6) numerator coefficients; the denominator uses the
# same values with alternating signs.
_PADE6 = tuple(
    math.factorial(12 - k) * math.factorial(6)
    / (math.factorial(12) * math.factorial(k) * math.factorial(6 - k))
    for k in range(7)
)


class LinAlgError(np.linalg.LinAlgError):
    """Base class for failures raised by this package."""


class SingularMatrixError(LinAlgError):
    pass


class ConvergenceError(LinAlgError):
    """An iterative method ran out of iterations."""

    def __init__(self, message, iterations):
        super().__init__(message)
        self.iterations = iterations


@dataclass(frozen=True)
class SchurFactorization:
    """``a = q @ t @ q.conj().T`` with ``q`` unitary and ``t`` upper triangular."""

    q: np.ndarray
    t: np.ndarray

    @property
    def eigenvalues(self):
        return np.diag(self.t).copy()


@dataclass(frozen=True)
class EigenFactorization:
    """``a @ w ~= w @ diag(eigenvalues)``.

    ``condition`` is the 1-norm condition number of ``w`` (``inf`` when
    ``w`` is singular to working precision). ``perturbed`` records that
    exactly repeated eigenvalues were split to make back-substitution
    possible.
    """

    w: np.ndarray
    eigenvalues: np.ndarray
    condition: float
    perturbed: bool = False


def as_matrix(a, name="a"):
    """Validate and convert ``a`` to a square, finite complex128 array."""
    m = np.array(a, dtype=np.complex128, copy=True, order="C")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def adjoint(a):
    return np.conj(a).T


def frobenius_norm(a):
    a = np.asarray(a, dtype=np.complex128)
    return float(np.sqrt(np.sum(a.real ** 2 + a.imag ** 2)))


def operator_norm(a, tol=OP_NORM_TOL, max_iter=OP_NORM_MAX_ITER, fallback=True):
    """Largest singular value of ``a``.

    Power iteration on ``a* a`` from a fixed pseudo-random start. When it
    has not settled after ``max_iter`` steps the answer comes from a full
    Hermitian eigensolve of ``a* a`` instead, unless ``fallback`` is off,
    in which case :class:`ConvergenceError` is raised.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n == 0:
        return 0.0
    fro = frobenius_norm(a)
    if fro == 0.0:
        return 0.0
    b = a / fro
    rng = np.random.default_rng(0x5EED)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x /= np.linalg.norm(x)
    bh = adjoint(b)
    rho_old = -1.0
    for it in range(1, max_iter + 1):
        y = b @ x
        z = bh @ y
        rho = float(np.vdot(y, y).real)
        znorm = np.linalg.norm(z)
        if znorm == 0.0:
            # landed in the null space; restart from a basis vector
            x = np.zeros(n, dtype=np.complex128)
            x[it % n] = 1.0
            continue
        resid = np.linalg.norm(z - rho * x)
        if abs(rho - rho_old) <= 0.01 * tol * rho and resid <= 0.01 * math.sqrt(tol) * rho:
            return fro * math.sqrt(rho)
        rho_old = rho
        x = z / znorm
    if not fallback:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations", max_iter
        )
    return fro * math.sqrt(max(hermitian_eigenvalues(bh @ b).max(), 0.0))


def hermitian_eigenvalues(a):
    """Real eigenvalues of a Hermitian matrix via the Schur kernel."""
    a = as_matrix(a)
    a = 0.5 * a + 0.5 * adjoint(a)
    return np.diag(schur(a).t).real.copy()


def schur(a, defl_tol=QR_DEFL_TOL, max_sweeps=MAX_QR_SWEEPS):
    """Complex Schur factorization by Hessenberg reduction and shifted QR.

    Returns a :class:`SchurFactorization` whose ``t`` has exact zeros below
    the diagonal. Raises :class:`ConvergenceError` if QR fails to deflate
    within ``max_sweeps * max(n, 10)`` sweeps.
    """
    h = as_matrix(a)
    n = h.shape[0]
    q = np.eye(n, dtype=np.complex128)
    if n <= 1:
        return SchurFactorization(q, h)
    _kernels.hessenberg(h, q)
    scale = frobenius_norm(h)
    max_iter = max_sweeps * max(n, 10)
    qh = np.ascontiguousarray(adjoint(q))
    sweeps = _kernels.hessenberg_qr(h, qh, defl_tol, max_iter, scale)
    if sweeps < 0:
        sweeps = -sweeps - 1
        raise ConvergenceError(
            f"QR iteration failed to deflate after {sweeps} sweeps", sweeps
        )
    t = np.triu(h)
    return SchurFactorization(np.ascontiguousarray(adjoint(qh)), t)


def _split_ties(diag):
    d = diag.copy()
    perturbed = False
    for k in range(1, d.size):
        while True:
            gap = np.abs(d[:k] - d[k])
            scale = np.maximum(np.abs(d[:k]), abs(d[k]))
            if not np.any(gap <= TIE_TOL * scale):
                break
            d[k] += TIE_NUDGE * (1.0 + abs(d[k]))
            perturbed = True
    return d, perturbed


def _norm1(a):
    return float(np.abs(a).sum(axis=0).max()) if a.size else 0.0


def eig_via_schur(a):
    """Eigenvalues and unit-norm eigenvectors from the Schur factor.

    Always returns; an ill-conditioned or singular eigenvector matrix shows
    up as a large (or infinite) ``condition``.
    """
    fac = schur(a)
    t = fac.t
    diag = np.diag(t).copy()
    shifted, perturbed = _split_ties(diag)
    x = _kernels.triangular_eigenvectors(t, shifted)
    w = fac.q @ x
    w /= np.linalg.norm(w, axis=0)
    try:
        condition = _norm1(w) * _norm1(inv(w))
    except SingularMatrixError:
        condition = math.inf
    return EigenFactorization(w, diag, condition, perturbed)


def _lu(a):
    lu = as_matrix(a)
    n = lu.shape[0]
    piv = np.zeros(n, dtype=np.int64)
    big = float(np.abs(lu).max()) if n else 0.0
    smallest = _kernels.lu_factor(lu, piv)
    if n and (big == 0.0 or smallest <= SINGULARITY_TOL * big):
        raise SingularMatrixError(
            f"matrix is singular to working precision (pivot {smallest:.3e}, scale {big:.3e})"
        )
    return lu, piv


def solve(a, b):
    """Solve ``a @ x = b`` by LU with partial pivoting.

    ``b`` may be a vector or a matrix. Raises :class:`SingularMatrixError`
    when a pivot falls below ``SINGULARITY_TOL`` times the largest entry.
    """
    lu, piv = _lu(a)
    b = np.asarray(b, dtype=np.complex128)
    vector = b.ndim == 1
    rhs = np.array(b.reshape(-1, 1) if vector else b, dtype=np.complex128, order="C")
    if rhs.shape[0] != lu.shape[0]:
        raise ValueError(f"shape mismatch: a is {lu.shape}, b is {b.shape}")
    _kernels.lu_solve(lu, piv, rhs)
    return rhs[:, 0] if vector else rhs


def inv(a):
    a = as_matrix(a)
    return solve(a, np.eye(a.shape[0], dtype=np.complex128))


def expm(a):
    """Matrix exponential by scaling and squaring with Pade(6, 6).

    The scaling makes ``sqrt(|A|_1 |A|_inf)``, an upper bound on the
    operator norm, at most 1/2 before the approximant is formed.
    """
    a = as_matrix(a)
    n = a.shape[0]
    ident = np.eye(n, dtype=np.complex128)
    if n == 0:
        return ident
    bound = math.sqrt(_norm1(a) * _norm1(a.T))
    if bound > EXPM_MAX_NORM:
        raise OverflowError(f"norm bound {bound:.3g} exceeds {EXPM_MAX_NORM}")
    squarings = 0
    if bound > 0.5:
        squarings = int(math.ceil(math.log2(bound / 0.5)))
    x = a / 2.0 ** squarings
    x2 = x @ x
    x4 = x2 @ x2
    x6 = x4 @ x2
    c = _PADE6
    even = c[0] * ident + c[2] * x2 + c[4] * x4 + c[6] * x6
    odd = x @ (c[1] * ident + c[3] * x2 + c[5] * x4)
    r = solve(even - odd, even + odd)
    for _ in range(squarings):
        r = r @ r
    return r
