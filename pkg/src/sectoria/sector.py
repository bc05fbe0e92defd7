"""Accretivity, minimal sector angle, and numerical-range boundary sampling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotAccretiveError
from .matrix_core import (
    adjoint,
    as_matrix,
    cartesian_decompose,
    eigvalsh,
    hermitian_eig,
    hermitize,
)

#: Re A counts as positive definite when lambda_min > ACCRETIVE_TOL * ||Re A||.
ACCRETIVE_TOL = 1e-12
SECTOR_SLACK = 1e-10


@dataclass(frozen=True)
class SectorProfile:
    accretive: bool
    alpha: Optional[float]  # None means "not sector"
    re_bounds: tuple[float, float]
    re_inv_bounds: Optional[tuple[float, float]]


def _is_pd(w: np.ndarray) -> bool:
    return w[0] > ACCRETIVE_TOL * max(abs(w[0]), abs(w[-1]))


def is_accretive(A) -> bool:
    return _is_pd(eigvalsh(cartesian_decompose(A)[0]))


def sector_angle(A) -> float:
    """Least ``alpha`` with ``W(A)`` inside the sector of half-angle ``alpha``.

    Uses ``+-Im A <= tan(alpha) Re A``, i.e.
    ``tan(alpha) = ||(Re A)^{-1/2} Im A (Re A)^{-1/2}||_2``.
    """
    re, im = cartesian_decompose(A)
    w, U = hermitian_eig(re)
    if not _is_pd(w):
        raise NotAccretiveError(f"Re A is not positive definite (lambda_min={w[0]:.3e})")
    # (Re A)^{-1/2} = U diag(w^{-1/2}) U*; conjugating by U leaves the norm unchanged
    d = w ** -0.5
    core = d[:, None] * (adjoint(U) @ im @ U) * d[None, :]
    t = np.abs(np.linalg.eigvalsh(hermitize(core)))
    return math.atan(float(t.max()))


def is_sector(A, alpha: float) -> bool:
    if not 0 <= alpha < math.pi / 2:
        raise ValueError(f"alpha must lie in [0, pi/2), got {alpha}")
    try:
        return sector_angle(A) <= alpha + SECTOR_SLACK
    except NotAccretiveError:
        return False


def sector_profile(A) -> SectorProfile:
    A = as_matrix(A)
    w = eigvalsh(cartesian_decompose(A)[0])
    re_bounds = (float(w[0]), float(w[-1]))
    if not _is_pd(w):
        return SectorProfile(False, None, re_bounds, None)
    alpha = sector_angle(A)
    wi = eigvalsh(cartesian_decompose(np.linalg.inv(A))[0])
    return SectorProfile(True, alpha, re_bounds, (float(wi[0]), float(wi[-1])))


def numerical_range_boundary(A, n_theta: int = 180) -> np.ndarray:
    """Sample boundary points of the numerical range ``W(A)``.

    For each direction ``theta`` the top eigenvector ``x`` of
    ``Re(exp(-i theta) A)`` is a support point; ``x* A x`` is returned.
    """
    if n_theta < 3:
        raise ValueError("need at least 3 directions")
    A = as_matrix(A)
    points = np.empty(n_theta, dtype=np.complex128)
    for k in range(n_theta):
        theta = 2.0 * math.pi * k / n_theta
        rotated = np.exp(-1j * theta) * A
        _, U = hermitian_eig(0.5 * (rotated + adjoint(rotated)))
        x = U[:, -1]
        points[k] = np.vdot(x, A @ x)
    return points


def boundary_thetas(n_theta: int) -> np.ndarray:
    return 2.0 * math.pi * np.arange(n_theta) / n_theta
