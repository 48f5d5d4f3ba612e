"""Compiled inner loops for the dense complex kernels.

Everything here works in place on contiguous ``complex128`` arrays and
signals failure through return codes; the wrappers in :mod:`unilog.core`
turn those into exceptions.
"""

import numpy as np
from numba import njit

_SAFMIN = np.finfo(np.float64).tiny
_EPS = np.finfo(np.float64).eps


@njit(cache=True)
def givens(a, b):
    """Return ``(c, s, r)`` with real ``c`` such that
    ``[[c, s], [-conj(s), c]] @ [a, b] == [r, 0]``."""
    aa = abs(a)
    bb = abs(b)
    if bb == 0.0:
        return 1.0, 0j, a
    if aa == 0.0:
        return 0.0, 1.0 + 0j, b
    nu = np.hypot(aa, bb)
    phase = a / aa
    c = aa / nu
    s = phase * np.conj(b) / nu
    return c, s, phase * nu


@njit(cache=True)
def hessenberg(h, z):
    """Householder reduction of ``h`` to upper Hessenberg form.

    Overwrites ``h`` and right-multiplies the reflectors into ``z``.
    """
    n = h.shape[0]
    v = np.empty(n, dtype=np.complex128)
    w = np.empty(n, dtype=np.complex128)
    for k in range(n - 2):
        m = n - k - 1
        tail = 0.0
        for i in range(k + 2, n):
            tail += h[i, k].real ** 2 + h[i, k].imag ** 2
        if tail == 0.0:
            continue
        x0 = h[k + 1, k]
        xnorm = np.sqrt(tail + abs(x0) ** 2)
        if x0 == 0:
            alpha = -xnorm + 0j
        else:
            alpha = -(x0 / abs(x0)) * xnorm
        v[0] = x0 - alpha
        for i in range(1, m):
            v[i] = h[k + 1 + i, k]
        vnorm = 0.0
        for i in range(m):
            vnorm += v[i].real ** 2 + v[i].imag ** 2
        vnorm = np.sqrt(vnorm)
        for i in range(m):
            v[i] /= vnorm
        # rows k+1.. : h <- (I - 2vv*) h, traversed row by row
        for j in range(k, n):
            w[j] = 0j
        for i in range(m):
            vc = np.conj(v[i])
            for j in range(k, n):
                w[j] += vc * h[k + 1 + i, j]
        for i in range(m):
            vi = 2.0 * v[i]
            for j in range(k, n):
                h[k + 1 + i, j] -= vi * w[j]
        # columns k+1.. : h <- h (I - 2vv*), z likewise
        for i in range(n):
            s = 0j
            for j in range(m):
                s += h[i, k + 1 + j] * v[j]
            s *= 2.0
            for j in range(m):
                h[i, k + 1 + j] -= s * np.conj(v[j])
            s = 0j
            for j in range(m):
                s += z[i, k + 1 + j] * v[j]
            s *= 2.0
            for j in range(m):
                z[i, k + 1 + j] -= s * np.conj(v[j])
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0j


@njit(cache=True)
def _wilkinson_shift(a, b, c, d):
    p = 0.5 * (a - d)
    disc = np.sqrt(p * p + b * c)
    den1 = p + disc
    den2 = p - disc
    den = den1 if abs(den1) >= abs(den2) else den2
    if den == 0:
        return d
    return d - b * c / den


@njit(cache=True)
def hessenberg_qr(h, zh, defl_tol, max_iter, scale):
    """Implicit single-shift QR on an upper Hessenberg ``h``.

    On success ``h`` holds the triangular Schur factor and ``zh``, the
    conjugate transpose of the vectors ``Z``, has been updated so that
    ``Z`` is right-multiplied by the accumulated rotations. Returns the number of
    QR sweeps, or ``-(sweeps + 1)`` if ``max_iter`` was exhausted.
    """
    n = h.shape[0]
    hi = n - 1
    its = 0
    total = 0
    floor = _SAFMIN / _EPS
    while hi > 0:
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = scale
            if sub <= defl_tol * s or sub <= floor:
                h[lo, lo - 1] = 0j
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if total >= max_iter:
            return -(total + 1)
        total += 1
        its += 1

        if its % 10 == 0:
            # exceptional shift to break cycling
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1].real) + 0.75 * abs(h[hi, hi - 1].imag)
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])

        x = h[lo, lo] - mu
        y = h[lo + 1, lo]
        for k in range(lo, hi):
            if k > lo:
                x = h[k, k - 1]
                y = h[k + 1, k - 1]
            c, s, r = givens(x, y)
            if k > lo:
                h[k, k - 1] = r
                h[k + 1, k - 1] = 0j
            sc = np.conj(s)
            for j in range(k, n):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = c * t1 + s * t2
                h[k + 1, j] = c * t2 - sc * t1
            top = min(k + 2, hi)
            for i in range(top + 1):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = c * t1 + sc * t2
                h[i, k + 1] = c * t2 - s * t1
            # zh holds Z^H, so the column rotation of Z is a row rotation
            for i in range(n):
                t1 = zh[k, i]
                t2 = zh[k + 1, i]
                zh[k, i] = c * t1 + s * t2
                zh[k + 1, i] = c * t2 - sc * t1
    return total


@njit(cache=True)
def triangular_eigenvectors(t, diag):
    """Eigenvectors of upper triangular ``t`` by back-substitution.

    ``diag`` replaces ``t``'s diagonal in the shifted systems (so ties can be
    broken by the caller). Column ``k`` of the result has a unit ``k``-th
    entry and zeros below it. Near-zero pivots are clamped the way LAPACK's
    ztrevc does.
    """
    n = t.shape[0]
    x = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        lam = diag[k]
        smin = max(_EPS * abs(lam), _SAFMIN / _EPS)
        x[k, k] = 1.0
        for i in range(k - 1, -1, -1):
            s = 0j
            for j in range(i + 1, k + 1):
                s += t[i, j] * x[j, k]
            den = diag[i] - lam
            if abs(den) < smin:
                den = smin + 0j
            x[i, k] = -s / den
    return x


@njit(cache=True)
def lu_factor(a, piv):
    """Partial-pivoting LU in place. Returns the smallest pivot modulus."""
    n = a.shape[0]
    smallest = np.inf
    for k in range(n):
        p = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            v = abs(a[i, k])
            if v > best:
                best = v
                p = i
        piv[k] = p
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
        if best < smallest:
            smallest = best
        if best == 0.0:
            continue
        inv = 1.0 / a[k, k]
        for i in range(k + 1, n):
            a[i, k] *= inv
        for i in range(k + 1, n):
            f = a[i, k]
            if f != 0:
                for j in range(k + 1, n):
                    a[i, j] -= f * a[k, j]
    return smallest


@njit(cache=True)
def lu_solve(lu, piv, b):
    """Solve in place for ``b`` (n x m) given the output of ``lu_factor``."""
    n = lu.shape[0]
    m = b.shape[1]
    for k in range(n):
        p = piv[k]
        if p != k:
            for j in range(m):
                tmp = b[k, j]
                b[k, j] = b[p, j]
                b[p, j] = tmp
    for k in range(n):
        for i in range(k + 1, n):
            f = lu[i, k]
            if f != 0:
                for j in range(m):
                    b[i, j] -= f * b[k, j]
    for k in range(n - 1, -1, -1):
        inv = 1.0 / lu[k, k]
        for j in range(m):
            b[k, j] *= inv
        for i in range(k):
            f = lu[i, k]
            if f != 0:
                for j in range(m):
                    b[i, j] -= f * b[k, j]
