import numpy as np
import pytest

from unilog.ensembles import complex_gaussian, haar_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def near_unitary(n, delta, rng):
    """``Q diag(s) W`` with Haar ``Q, W`` and ``max |s^2 - 1| == delta``."""
    q = haar_unitary(n, rng)
    w = haar_unitary(n, rng)
    s2 = 1.0 + rng.uniform(-delta, delta, size=n)
    s2[0] = 1.0 + delta if rng.random() < 0.5 else 1.0 - delta
    return (q * np.sqrt(s2)) @ w


def ginibre(n, rng):
    return complex_gaussian(n, rng)


def op_norm(a):
    """Reference operator norm (LAPACK SVD), independent of unilog."""
    return np.linalg.norm(np.asarray(a), 2)
