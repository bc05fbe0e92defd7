"""Gauss-Jacobi rules by the Golub-Welsch eigenvalue method."""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln


@lru_cache(maxsize=64)
def gauss_jacobi(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int_{-1}^{1} (1-x)^a (1+x)^b f(x) dx``.

    Built from the symmetric tridiagonal Jacobi matrix of the three-term
    recurrence. Unlike Newton iteration on the polynomial this keeps full
    accuracy for several hundred nodes with ``b`` close to ``-1``.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if not (a > -1 and b > -1):
        raise ValueError("Jacobi exponents must exceed -1")
    ab = a + b
    k = np.arange(n, dtype=float)
    denom = (2 * k + ab) * (2 * k + ab + 2)
    diag = np.empty(n)
    diag[0] = (b - a) / (ab + 2)
    diag[1:] = (b * b - a * a) / denom[1:]
    j = np.arange(1, n, dtype=float)
    off = np.sqrt(
        4 * j * (j + a) * (j + b) * (j + ab)
        / ((2 * j + ab) ** 2 * (2 * j + ab + 1) * (2 * j + ab - 1))
    )
    x, V = eigh_tridiagonal(diag, off)
    mu0 = 2 ** (ab + 1) * np.exp(gammaln(a + 1) + gammaln(b + 1) - gammaln(ab + 2))
    w = mu0 * V[0] ** 2
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=64)
def unit_interval_rule(n: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for ``int_0^1 s^exponent f(s) ds`` with ``exponent > -1``."""
    x, w = gauss_jacobi(n, 0.0, exponent)
    s = 0.5 * (1.0 + x)
    ws = w * 0.5 ** (exponent + 1.0)
    s.setflags(write=False)
    ws.setflags(write=False)
    return s, ws
