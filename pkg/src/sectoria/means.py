"""
Weighted arithmetic, harmonic and geometric means.

The geometric mean of two accretive matrices is the integral

    A #_v B = sin(v pi)/pi * int_0^inf s^(v-1) (A^-1 + s B^-1)^-1 ds.

The range is split at ``s = 1``. On ``[1, inf)`` the substitution
``s -> 1/s`` turns the integrand into ``t^(-v) (B^-1 + t A^-1)^-1`` on
``[0, 1]``, so both pieces are Gauss-Jacobi rules on ``[0, 1]`` with the
endpoint singularity absorbed into the weight.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .errors import NotAccretiveError, NotPSDError, SingularMatrixError
from .matrix_core import as_matrix, eigvalsh, hermitize, psd_power, real_part
from .quadrature import unit_interval_rule
from .sector import is_accretive

DEFAULT_RTOL = 1e-10
NODE_SCHEDULE = (8, 16, 32, 64, 128, 256, 512)


class QuadratureWarning(RuntimeWarning):
    pass


@dataclass
class MeanResult:
    value: np.ndarray
    method: str  # "closed_form_psd" | "integral_accretive" | "endpoint"
    nodes_used: int = 0
    convergence_estimate: float = 0.0
    converged: bool = True


def _check_weight(v):
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"weight v must lie in [0, 1], got {v}")


def _pair(A, B):
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch {A.shape} vs {B.shape}")
    return A, B


def _require_accretive(*mats):
    for M in mats:
        if not is_accretive(M):
            raise NotAccretiveError("input matrix is not accretive")


def arithmetic_mean(A, B, v: float) -> np.ndarray:
    _check_weight(v)
    A, B = _pair(A, B)
    return (1.0 - v) * A + v * B


def harmonic_mean(A, B, v: float) -> np.ndarray:
    _check_weight(v)
    A, B = _pair(A, B)
    _require_accretive(A, B)
    eye = np.eye(A.shape[0])
    inv_sum = (1.0 - v) * np.linalg.solve(A, eye) + v * np.linalg.solve(B, eye)
    return np.linalg.solve(inv_sum, eye)


def geometric_mean_psd(A, B, v: float) -> np.ndarray:
    """Closed form ``A^1/2 (A^-1/2 B A^-1/2)^v A^1/2`` for ``A`` PD, ``B`` PSD."""
    _check_weight(v)
    A, B = _pair(A, B)
    w = eigvalsh(A)
    if w[0] < -1e-10 * max(abs(w[0]), abs(w[-1])):
        raise NotPSDError("A is not positive semidefinite")
    if w[0] <= A.shape[0] * np.finfo(float).eps * abs(w[-1]):
        raise SingularMatrixError("A must be positive definite")
    a_half = psd_power(A, 0.5)
    a_mhalf = psd_power(A, -0.5)
    core = psd_power(hermitize(a_mhalf @ B @ a_mhalf), v)
    return hermitize(a_half @ core @ a_half)


def _segment(P_inv, Q_inv, exponent, n_nodes):
    """``int_0^1 s^exponent (P^-1 + s Q^-1)^-1 ds`` by an ``n_nodes`` rule."""
    s, w = unit_interval_rule(n_nodes, exponent)
    n = P_inv.shape[0]
    stack = P_inv[None, :, :] + s[:, None, None] * Q_inv[None, :, :]
    rhs = np.broadcast_to(np.eye(n, dtype=np.complex128), stack.shape)
    vals = np.linalg.solve(stack, rhs)
    # fixed-order weighted sum
    return np.tensordot(w, vals, axes=1)


def geometric_mean_accretive(A, B, v: float, rtol: float = DEFAULT_RTOL) -> MeanResult:
    """Weighted geometric mean of accretive matrices by Gauss-Jacobi quadrature.

    Node counts follow ``NODE_SCHEDULE`` per segment until the relative
    Frobenius change between successive levels drops below ``rtol``. If the
    cap is reached first a :class:`QuadratureWarning` is issued and the
    result carries ``converged=False``.
    """
    _check_weight(v)
    A, B = _pair(A, B)
    _require_accretive(A, B)
    if v == 0.0:
        return MeanResult(A.copy(), "endpoint")
    if v == 1.0:
        return MeanResult(B.copy(), "endpoint")

    eye = np.eye(A.shape[0], dtype=np.complex128)
    A_inv = sla.lu_solve(sla.lu_factor(A), eye)
    B_inv = sla.lu_solve(sla.lu_factor(B), eye)
    pref = math.sin(v * math.pi) / math.pi

    prev = None
    estimate = np.inf
    total_nodes = 0
    for n_nodes in NODE_SCHEDULE:
        head = _segment(A_inv, B_inv, v - 1.0, n_nodes)
        tail = _segment(B_inv, A_inv, -v, n_nodes)
        current = pref * (head + tail)
        total_nodes += 2 * n_nodes
        if prev is not None:
            estimate = np.linalg.norm(current - prev) / max(np.linalg.norm(current), 1e-300)
            if estimate < rtol:
                return MeanResult(current, "integral_accretive", total_nodes, float(estimate))
        prev = current
    warnings.warn(
        f"geometric mean quadrature stopped at {NODE_SCHEDULE[-1]} nodes per segment "
        f"with relative change {estimate:.3e} (target {rtol:.1e})",
        QuadratureWarning,
        stacklevel=2,
    )
    return MeanResult(prev, "integral_accretive", total_nodes, float(estimate), converged=False)


def geometric_mean(A, B, v: float, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Value of :func:`geometric_mean_accretive`."""
    return geometric_mean_accretive(A, B, v, rtol).value


def mean_real_parts(A, B, v: float, rtol: float = DEFAULT_RTOL):
    """Real parts of the harmonic, geometric and arithmetic means of ``(A, B)``."""
    return (
        real_part(harmonic_mean(A, B, v)),
        real_part(geometric_mean(A, B, v, rtol)),
        real_part(arithmetic_mean(A, B, v)),
    )
