"""Self-dual (J-skew-symmetric, skew-Hamiltonian) matrices.

With ``J = [[0, I], [-I, 0]]`` the dual of ``X`` is ``-J X^T J``, which in
``N x N`` blocks reads

    [[A, B], [C, D]]#  =  [[D^T, -B^T], [-C^T, A^T]].

``X`` is self-dual when ``X# == X``. Conjugating by a symplectic unitary
(``Q# == Q*``) keeps a matrix self-dual, which is what lets the structured
Schur form below exist.
"""

from dataclasses import dataclass

import numpy as np

from unilog._kernels import givens
from unilog.core import adjoint, as_matrix, frobenius_norm, schur
from unilog.logs import (
    Algorithm,
    _angles,
    _diagonalize,
    _phases,
    _run,
    hermitian_part,
)
from unilog.polar import newton_two_step

SELFDUAL_TOL = 1e-10


class StructureError(ValueError):
    """Input lacks the symmetry an operation requires."""


@dataclass(frozen=True)
class SymplecticSchurFactorization:
    """``x = q @ [[t, b], [0, t.T]] @ q*`` with ``q`` symplectic unitary,
    ``t`` upper triangular and ``b`` skew-symmetric."""

    q: np.ndarray
    t: np.ndarray
    b: np.ndarray

    @property
    def s(self):
        m = self.t.shape[0]
        out = np.zeros((2 * m, 2 * m), dtype=np.complex128)
        out[:m, :m] = self.t
        out[:m, m:] = self.b
        out[m:, m:] = self.t.T
        return out


def _half(n):
    if n % 2:
        raise StructureError(f"dual needs an even dimension, got {n}")
    return n // 2


def symplectic_form(m):
    """``J = [[0, I_m], [-I_m, 0]]``."""
    j = np.zeros((2 * m, 2 * m), dtype=np.complex128)
    j[:m, m:] = np.eye(m)
    j[m:, :m] = -np.eye(m)
    return j


def dual(x):
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    m = _half(x.shape[0])
    out = np.empty_like(x)
    out[:m, :m] = x[m:, m:].T
    out[:m, m:] = -x[:m, m:].T
    out[m:, :m] = -x[m:, :m].T
    out[m:, m:] = x[:m, :m].T
    return out


def selfdual_part(x, literal=False):
    """``(X + X#) / 2``, the projection onto self-dual matrices.

    ``literal=True`` returns ``X# / 2`` instead, a second reading of the
    symmetrization step that only exists for comparison; it halves
    self-dual inputs.
    """
    x = np.asarray(x, dtype=np.complex128)
    if literal:
        return 0.5 * dual(x)
    return 0.5 * x + 0.5 * dual(x)


def selfdual_defect(x):
    """Relative Frobenius distance ``||X - X#|| / ||X||``."""
    x = np.asarray(x, dtype=np.complex128)
    scale = frobenius_norm(x)
    return frobenius_norm(x - dual(x)) / scale if scale else 0.0


def _require_selfdual(x, name="x"):
    defect = selfdual_defect(x)
    if defect > SELFDUAL_TOL:
        raise StructureError(f"{name} is not self-dual (relative defect {defect:.3e})")


def _householder(x):
    """Unit ``v`` with ``(I - 2 v v*) x`` a multiple of ``e_0``, or ``None``
    if ``x`` already is one."""
    if x.size < 2 or not np.any(x[1:]):
        return None
    x0 = x[0]
    xnorm = np.linalg.norm(x)
    alpha = -xnorm if x0 == 0 else -(x0 / abs(x0)) * xnorm
    v = x.copy()
    v[0] -= alpha
    return v / np.linalg.norm(v)


def _reflect(s, q, v, lo, m):
    """Conjugate by ``diag(P, conj(P))`` with ``P = I - 2 v v*`` acting on
    indices ``lo..m-1`` of each half."""
    top = slice(lo, m)
    bot = slice(m + lo, 2 * m)
    vc = np.conj(v)
    s[top, :] -= 2.0 * np.outer(v, vc @ s[top, :])
    s[bot, :] -= 2.0 * np.outer(vc, v @ s[bot, :])
    for a in (s, q):
        a[:, top] -= 2.0 * np.outer(a[:, top] @ v, vc)
        a[:, bot] -= 2.0 * np.outer(a[:, bot] @ vc, v)


def _rotate(s, q, p, r, c, sn):
    """Conjugate by the symplectic rotation ``G`` with ``G[p,p] = G[r,r] = c``,
    ``G[p,r] = sn``, ``G[r,p] = -conj(sn)``."""
    sc = np.conj(sn)
    rp = s[p, :].copy()
    rr = s[r, :]
    s[p, :] = c * rp - sn * rr
    s[r, :] = sc * rp + c * rr
    for a in (s, q):
        cp = a[:, p].copy()
        cr = a[:, r]
        a[:, p] = c * cp - sc * cr
        a[:, r] = sn * cp + c * cr


def pvl_reduce(x):
    """Paige/Van Loan-style reduction of a self-dual matrix.

    Returns ``(q1, s1)`` with ``q1`` symplectic unitary and
    ``s1 = q1* x q1`` having an exactly zero lower-left block and an upper
    Hessenberg upper-left block. Each column is handled by a symplectic
    reflector that compresses the lower-left column, a rotation in the
    ``(j+1, m+j+1)`` plane that annihilates what is left of it, and a second
    symplectic reflector that restores Hessenberg form.
    """
    s = as_matrix(x)
    n = s.shape[0]
    m = _half(n)
    _require_selfdual(s)
    q = np.eye(n, dtype=np.complex128)
    for j in range(m - 1):
        lo = j + 1
        # lower rows pick up conj(P), so reflect the conjugated column
        v = _householder(np.conj(s[m + lo:, j]))
        if v is not None:
            _reflect(s, q, v, lo, m)
        a, b = s[lo, j], s[m + lo, j]
        if b != 0:
            c, sn, _ = givens(a, b)
            _rotate(s, q, lo, m + lo, c, -sn)
        v = _householder(s[lo:m, j])
        if v is not None:
            _reflect(s, q, v, lo, m)
    s[m:, :m] = 0.0
    upper = s[:m, :m]
    upper[np.tril_indices(m, -2)] = 0.0
    return q, s


def selfdual_schur(x):
    """Structured Schur factorization of a self-dual matrix.

    The Hessenberg block from :func:`pvl_reduce` is triangularized by an
    ordinary Schur factorization ``T1 = W T W*``, and
    ``q = q1 @ diag(W, conj(W))`` keeps the symplectic structure.
    """
    q1, s1 = pvl_reduce(x)
    m = s1.shape[0] // 2
    fac = schur(s1[:m, :m])
    w = fac.q
    q = q1.copy()
    q[:, :m] = q1[:, :m] @ w
    q[:, m:] = q1[:, m:] @ np.conj(w)
    b = adjoint(w) @ s1[:m, m:] @ np.conj(w)
    b = 0.5 * b - 0.5 * b.T
    return SymplecticSchurFactorization(q, fac.t, b)


def _log_selfdual(u):
    v = selfdual_part(newton_two_step(u))
    fac = selfdual_schur(v)
    theta = _angles(_phases(np.diag(fac.t)))
    # D = diag(d, d) is self-dual by construction
    theta = np.concatenate([theta, theta])
    h = hermitian_part(-(fac.q * theta) @ adjoint(fac.q))
    return selfdual_part(h)


def log_unitary_selfdual(u):
    """Logarithm that is exactly Hermitian and exactly self-dual.

    Two Newton polar steps (which preserve self-duality), a structured
    Schur factorization, and the phases of its triangular diagonal, each
    used twice. Raises :class:`StructureError` for non-self-dual input.
    """
    u = as_matrix(u, "u")
    _half(u.shape[0])
    _require_selfdual(u, "u")
    return _run(u, Algorithm.SELFDUAL, _log_selfdual)


def log_unitary_diagonalize_selfdual(u, literal=False):
    """Naive diagonalization logarithm followed by self-dual symmetrization."""
    u = as_matrix(u, "u")
    _half(u.shape[0])
    return _run(
        u,
        Algorithm.DIAGONALIZE_SELFDUAL,
        lambda v: selfdual_part(_diagonalize(v), literal=literal),
    )


SELFDUAL_ALGORITHMS = {
    Algorithm.DIAGONALIZE_SELFDUAL: log_unitary_diagonalize_selfdual,
    Algorithm.SELFDUAL: log_unitary_selfdual,
}
