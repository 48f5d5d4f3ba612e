"""Seeded generators for near-unitary test matrices with eigenvalues
clustered at the branch cut ``-1``."""

from dataclasses import dataclass

import numpy as np

from unilog.core import adjoint
from unilog.logs import hermitian_part
from unilog.selfdual import selfdual_part, selfdual_schur

CLUSTER_OFFSET = 1e-8
# Entries of the noise matrix are complex Gaussian with E|g|^2 = NOISE_VARIANCE.
NOISE_VARIANCE = 0.3
RNG_NAME = "numpy PCG64 via SeedSequence([seed, trial])"


@dataclass(frozen=True)
class EnsembleSpec:
    """One benchmark configuration.

    The additive noise is scaled by ``noise_base * n**noise_exponent``; the
    default exponent keeps the deviation from unitary roughly constant in
    ``n``.
    """

    n: int
    noise_base: float
    noise_exponent: float = -0.56
    trials: int = 30
    seed: int = 0
    structured: bool = False

    def __post_init__(self):
        if self.n < 4:
            raise ValueError(f"n must be at least 4 to hold the -1 cluster, got {self.n}")
        if self.structured and self.n % 2:
            raise ValueError(f"self-dual ensembles need even n, got {self.n}")
        if self.noise_base < 0:
            raise ValueError("noise_base must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    @property
    def noise_scale(self):
        return self.noise_base * self.n ** self.noise_exponent


def trial_rng(seed, trial):
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def complex_gaussian(n, rng, variance=1.0):
    """``n x n`` matrix of iid circular complex Gaussians with ``E|g|^2 = variance``."""
    sigma = np.sqrt(variance / 2.0)
    return sigma * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def haar_unitary(n, rng):
    """Haar-distributed unitary: QR of a Ginibre sample with the phases of
    ``R``'s diagonal moved into ``Q``."""
    if n < 1:
        raise ValueError("n must be positive")
    q, r = np.linalg.qr(complex_gaussian(n, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def _cluster_phases(count, rng, head):
    phases = np.exp(1j * rng.uniform(-np.pi, np.pi, size=count))
    phases[: len(head)] = head
    return phases


def adversarial_unitary(spec, rng):
    """``Q D0 Q* + s G``: Haar ``Q``, a doubled eigenvalue at ``-1`` flanked
    by ``exp(+-i(pi - 1e-8))``, uniform phases elsewhere, and complex
    Gaussian noise ``G`` scaled by ``s = spec.noise_scale``."""
    if spec.structured:
        raise ValueError("use adversarial_selfdual_unitary for structured ensembles")
    n = spec.n
    near = np.pi - CLUSTER_OFFSET
    head = [-1.0, -1.0, np.exp(1j * near), np.exp(-1j * near)]
    q = haar_unitary(n, rng)
    d = _cluster_phases(n, rng, head)
    u = (q * d) @ adjoint(q)
    if spec.noise_base:
        u = u + spec.noise_scale * complex_gaussian(n, rng, NOISE_VARIANCE)
    return u


def symplectic_unitary(m, rng):
    """Random symplectic unitary of size ``2m``: the structured Schur
    vectors of a random Hermitian self-dual matrix."""
    h0 = selfdual_part(hermitian_part(complex_gaussian(2 * m, rng)))
    return selfdual_schur(h0).q


def adversarial_selfdual_unitary(spec, rng):
    """Exactly self-dual near-unitary with at least four eigenvalues near
    ``-1``: ``Q diag(d, d) Q*`` for a symplectic unitary ``Q``, plus noise,
    then projected with :func:`selfdual_part`."""
    if not spec.structured:
        raise ValueError("spec.structured must be set")
    n = spec.n
    m = n // 2
    near = np.pi - CLUSTER_OFFSET
    head = [-1.0, np.exp(1j * near), np.exp(-1j * near)][:m]
    q = symplectic_unitary(m, rng)
    d = _cluster_phases(m, rng, head)
    u = (q * np.concatenate([d, d])) @ adjoint(q)
    if spec.noise_base:
        u = u + spec.noise_scale * complex_gaussian(n, rng, NOISE_VARIANCE)
    return selfdual_part(u)


def generate(spec, trial):
    rng = trial_rng(spec.seed, trial)
    if spec.structured:
        return adversarial_selfdual_unitary(spec, rng)
    return adversarial_unitary(spec, rng)
