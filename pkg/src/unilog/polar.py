"""Unitary polar factor of a near-unitary matrix.

Two routes: Newton's iteration ``V <- (V + V^{-*}) / 2`` run for a fixed
number of steps, and the closed form ``U (U* U)^{-1/2}`` evaluated through a
Hermitian eigensolve.
"""

import numpy as np

from unilog.core import SINGULARITY_TOL, adjoint, as_matrix, inv, schur

POLAR_TOL = 1e-12


def newton_step(u):
    """One Newton step towards the unitary polar factor.

    If ``||U*U - I|| = d <= 3/4`` the result ``V`` satisfies
    ``||V*V - I|| <= d**2`` and ``||U - V|| <= d``.
    """
    u = as_matrix(u, "u")
    return 0.5 * u + 0.5 * adjoint(inv(u))


def newton_two_step(u):
    """Two Newton steps; with ``d <= 3/4`` the result has
    ``||V*V - I|| <= (4/25) d**4`` and ``||U - V|| <= (7/10) d``."""
    return newton_step(newton_step(u))


def polar_unitary(u):
    """Unitary factor ``U (U* U)^{-1/2}`` of the polar decomposition.

    The inverse square root is applied through the eigenvectors of the
    Hermitian matrix ``U* U`` (its Schur vectors). Raises ``ValueError`` if
    ``U* U`` has an eigenvalue at or below ``SINGULARITY_TOL`` times its
    largest, i.e. ``u`` is numerically singular.
    """
    u = as_matrix(u, "u")
    n = u.shape[0]
    if n == 0:
        return u
    p = adjoint(u) @ u
    p = 0.5 * p + 0.5 * adjoint(p)
    fac = schur(p)
    lam = np.diag(fac.t).real
    top = lam.max()
    if top <= 0.0 or lam.min() <= SINGULARITY_TOL * top:
        raise ValueError(
            f"u*u has eigenvalue {lam.min():.3e}; matrix too far from unitary"
        )
    q = fac.q
    inv_sqrt = (q * lam ** -0.5) @ adjoint(q)
    return u @ inv_sqrt
