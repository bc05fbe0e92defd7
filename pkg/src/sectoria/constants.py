"""Kantorovich constant, spectral bound extraction, and per-result factors."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotPSDError
from .matrix_core import eigvalsh


def kantorovich(h: float) -> float:
    """``K(h) = (h + 1)**2 / (4 h)`` for a condition ratio ``h >= 1``."""
    if not h >= 1:
        raise ValueError(f"condition ratio must be >= 1, got {h}")
    return (h + 1.0) ** 2 / (4.0 * h)


def spectral_bounds(H) -> tuple[float, float]:
    """Tightest ``(m, M)`` with ``m I <= H <= M I`` for positive definite ``H``."""
    w = eigvalsh(H)
    if w[0] <= 0:
        raise NotPSDError(f"matrix is not positive definite (lambda_min={w[0]:.3e})")
    return float(w[0]), float(w[-1])


def joint_bounds(*Hs) -> tuple[float, float]:
    """Common two-sided bound over several positive definite matrices."""
    bounds = [spectral_bounds(H) for H in Hs]
    return min(b[0] for b in bounds), max(b[1] for b in bounds)


@dataclass(frozen=True)
class BoundContext:
    m: float
    M: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (self.m > 0 and self.M >= self.m):
            raise ValueError(f"need 0 < m <= M, got m={self.m}, M={self.M}")
        if not 0 <= self.alpha < math.pi / 2:
            raise ValueError(f"alpha must lie in [0, pi/2), got {self.alpha}")

    @property
    def h(self) -> float:
        return self.M / self.m

    @property
    def K(self) -> float:
        return kantorovich(self.h)

    @property
    def sec(self) -> float:
        return 1.0 / math.cos(self.alpha)


# (power of sec(alpha), power of K(h), power of 1/2, scales with n, log domain)
_FACTORS = {
    "theorem26_i": (8, 2, 0, False, False),
    "theorem26_ii": (-8, -2, 0, False, False),
    "det20": (5, 1, 0, True, True),
    "det21": (-5, -1, 0, True, True),
    "det_proposition": (4, 0, 1, True, True),
    "det_note": (3, 0, 0, True, True),
    "sv_upper": (6, 1, 0, False, False),
    "sv_lower": (-6, -1, 0, False, False),
    "norm_upper": (5, 1, 0, False, False),
    "norm_lower": (-5, -1, 0, False, False),
    "norm_proposition": (5, 0, 1, False, False),
    "tan_xie_lower": (-2, 0, 0, False, False),
    "tan_xie_upper": (2, 0, 0, False, False),
}

FACTOR_IDS = tuple(_FACTORS)
LOG_DOMAIN_IDS = frozenset(k for k, f in _FACTORS.items() if f[4])


def bound_factor(result_id: str, ctx: BoundContext, n: int = 1) -> float:
    """Constant multiplying the right-hand side of ``result_id``.

    Determinant results (``det20``, ``det21``, ``det_proposition``,
    ``det_note``) carry an ``n``-th power and are returned as natural logs.
    """
    try:
        sec_pow, k_pow, half_pow, per_dim, log_domain = _FACTORS[result_id]
    except KeyError:
        raise KeyError(f"unknown result id {result_id!r}") from None
    log_sec = -math.log(math.cos(ctx.alpha))
    log_f = sec_pow * log_sec + k_pow * math.log(ctx.K) - half_pow * math.log(2.0)
    if per_dim:
        log_f *= n
    if log_domain:
        return log_f
    if ctx.alpha == math.pi / 4:
        # sec(pi/4)**2 == 2 exactly; keeps the quarter-pi constants free of ulp drift
        sec_part = 2.0 ** (sec_pow / 2)
    else:
        sec_part = ctx.sec ** sec_pow
    return sec_part * ctx.K ** k_pow * 0.5 ** half_pow
