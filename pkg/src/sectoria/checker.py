"""
Certification of the sector-matrix mean inequalities.

Every ``check_*`` function evaluates both sides of one inequality (or one
family of inequalities) on concrete matrices and returns
:class:`~sectoria.certificate.Certificate` records. Nothing here raises on a
violated inequality; a failure is a certificate with ``passed == False``.

Conventions
-----------
* ``alpha`` defaults to ``max(sector_angle(A), sector_angle(B))``. Passing a
  larger value is allowed (the inequalities only get weaker); a smaller one
  raises :class:`NotSectorError`.
* Hypothesis constants ``(m, M)`` are always the tightest joint spectral
  bounds of the relevant Hermitian parts.
* ``Phi^2(X)`` is read as the matrix square of ``Phi(X)``.
"""
from __future__ import annotations

import math
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .certificate import (
    LOEWNER_RTOL,
    SCALAR_RTOL,
    Certificate,
    log_certificate,
    loewner_certificate,
    scalar_certificate,
)
from .constants import BoundContext, bound_factor, joint_bounds
from .errors import NotAccretiveError, NotPSDError, NotSectorError
from .maps import MapSpec, apply, apply_squared
from .matrix_core import (
    NormKind,
    all_ky_fan,
    as_matrix,
    eigvalsh,
    hermitize,
    log_abs_det,
    loewner_leq,
    parse_norm_kind,
    psd_power,
    real_part,
    schatten,
    singular_values,
    spectral_norm,
    unitarily_invariant_norm,
)
from .means import (
    DEFAULT_RTOL,
    arithmetic_mean,
    geometric_mean,
    geometric_mean_psd,
    harmonic_mean,
)
from .sector import sector_angle

PHI_SQUARED_NOTE = "Phi^2(X) read as the matrix square Phi(X)@Phi(X), not Phi(Phi(X))"
KANTOROVICH_BOUNDS_NOTE = "(m, M) taken as joint spectral bounds of {A, B}"
QUARTER_PI_NOTE = (
    "norm factors at alpha=pi/4: upper 4*sqrt(2)*K(h), lower K(h)^-1/(4*sqrt(2)) "
    "(the reciprocal pairing is not certified)"
)
SCHATTEN_SPOT = (1.0, 2.0, 3.0, np.inf)


class Means(NamedTuple):
    harmonic: np.ndarray
    geometric: np.ndarray
    arithmetic: np.ndarray


def compute_means(A, B, v: float, rtol: float = DEFAULT_RTOL) -> Means:
    return Means(
        harmonic_mean(A, B, v),
        geometric_mean(A, B, v, rtol),
        arithmetic_mean(A, B, v),
    )


def common_alpha(A, B=None, alpha: Optional[float] = None) -> float:
    """Largest sector angle among the inputs, or a validated override."""
    try:
        actual = max(sector_angle(M) for M in (A, B) if M is not None)
    except NotAccretiveError as exc:
        raise NotSectorError(str(exc)) from exc
    if alpha is None:
        return actual
    if alpha < actual - 1e-10:
        raise NotSectorError(f"alpha={alpha} is below the sector angle {actual}")
    if not alpha < math.pi / 2:
        raise NotSectorError(f"alpha={alpha} is not below pi/2")
    return float(alpha)


def _require_pd(*mats):
    out = []
    for M in mats:
        M = as_matrix(M)
        if np.linalg.norm(M - M.conj().T, 2) > 1e-10 * (1 + np.linalg.norm(M, 2)):
            raise NotPSDError("input is not Hermitian")
        M = hermitize(M)
        if eigvalsh(M)[0] <= 0:
            raise NotPSDError("input is not positive definite")
        out.append(M)
    return out


def inverse_real_parts(A, B):
    return real_part(np.linalg.inv(as_matrix(A))), real_part(np.linalg.inv(as_matrix(B)))


def context_i(A, B, alpha) -> BoundContext:
    """Bounds ``m I <= Re(A^-1), Re(B^-1) <= M I``."""
    return BoundContext(*joint_bounds(*inverse_real_parts(A, B)), alpha)


def context_ii(A, B, alpha) -> BoundContext:
    """Bounds ``m I <= Re A, Re B <= M I``."""
    return BoundContext(*joint_bounds(real_part(A), real_part(B)), alpha)


def _ctx_params(ctx: BoundContext, factor, **extra):
    return dict(alpha=ctx.alpha, m=ctx.m, M=ctx.M, h=ctx.h, K=ctx.K, factor=factor, **extra)


# --- classical positive definite chain -------------------------------------


def check_hm_gm_am_psd(A, B, v: float, tol: float = LOEWNER_RTOL) -> list[Certificate]:
    """``A !_v B <= A #_v B <= A nabla_v B`` for positive definite pairs."""
    A, B = _require_pd(A, B)
    harm = hermitize(harmonic_mean(A, B, v))
    geo = geometric_mean_psd(A, B, v)
    arith = arithmetic_mean(A, B, v)
    return [
        loewner_certificate("hm_le_gm", harm, geo, tol, v=v),
        loewner_certificate("gm_le_am", geo, arith, tol, v=v),
    ]


def check_kantorovich_reverse_psd(A, B, v: float, tol: float = LOEWNER_RTOL) -> Certificate:
    """``A nabla_v B <= K(h) (A #_v B)`` with ``(m, M)`` the joint bounds of ``{A, B}``."""
    A, B = _require_pd(A, B)
    ctx = BoundContext(*joint_bounds(A, B))
    geo = geometric_mean_psd(A, B, v)
    return loewner_certificate(
        "kantorovich_reverse",
        arithmetic_mean(A, B, v),
        ctx.K * geo,
        tol,
        notes=KANTOROVICH_BOUNDS_NOTE,
        **_ctx_params(ctx, ctx.K, v=v),
    )


# --- sector inequalities ----------------------------------------------------


def check_tan_xie(A, B, v: float, alpha=None, means: Optional[Means] = None,
                  tol: float = LOEWNER_RTOL) -> list[Certificate]:
    """``cos^2(a) Re(A !_v B) <= Re(A #_v B) <= sec^2(a) Re(A nabla_v B)``."""
    alpha = common_alpha(A, B, alpha)
    means = means or compute_means(A, B, v)
    re_h, re_g, re_a = (real_part(M) for M in means)
    c2 = math.cos(alpha) ** 2
    return [
        loewner_certificate("tan_xie_lower", c2 * re_h, re_g, tol, v=v, alpha=alpha, factor=c2),
        loewner_certificate("tan_xie_upper", re_g, re_a / c2, tol, v=v, alpha=alpha, factor=1 / c2),
    ]


def check_theorem_reverse(A, B, v: float, phi: Optional[MapSpec] = None, alpha=None,
                          means: Optional[Means] = None,
                          tol: float = LOEWNER_RTOL) -> list[Certificate]:
    """Kantorovich-type reverses of the sector double inequality under ``Phi``.

    (i)  ``Phi(Re #)^2 <= sec^8(a) K(h)^2 Phi(Re !)^2``, bounds on ``Re(A^-1), Re(B^-1)``;
    (ii) ``K(h)^-2 cos^8(a) Phi(Re nabla)^2 <= Phi(Re #)^2``, bounds on ``Re A, Re B``.
    """
    A, B = as_matrix(A), as_matrix(B)
    alpha = common_alpha(A, B, alpha)
    phi = phi or MapSpec.identity(A.shape[0])
    means = means or compute_means(A, B, v)
    re_h, re_g, re_a = (real_part(M) for M in means)
    sq_h, sq_g, sq_a = (apply_squared(phi, X) for X in (re_h, re_g, re_a))

    ctx1 = context_i(A, B, alpha)
    f1 = bound_factor("theorem26_i", ctx1)
    ctx2 = context_ii(A, B, alpha)
    f2 = bound_factor("theorem26_ii", ctx2)
    return [
        loewner_certificate("theorem26_i", sq_g, f1 * sq_h, tol, notes=PHI_SQUARED_NOTE,
                            **_ctx_params(ctx1, f1, v=v, map=phi.kind)),
        loewner_certificate("theorem26_ii", f2 * sq_a, sq_g, tol, notes=PHI_SQUARED_NOTE,
                            **_ctx_params(ctx2, f2, v=v, map=phi.kind)),
    ]


# --- determinants -----------------------------------------------------------


def check_det_corollary(A, B, v: float, alpha=None, means: Optional[Means] = None,
                        tol: float = SCALAR_RTOL) -> list[Certificate]:
    """``|det #| <= sec^5n K^n |det !|`` and ``|det #| >= cos^5n K^-n |det nabla|``."""
    A, B = as_matrix(A), as_matrix(B)
    n = A.shape[0]
    alpha = common_alpha(A, B, alpha)
    means = means or compute_means(A, B, v)
    ld_h, ld_g, ld_a = (log_abs_det(M) for M in means)
    ctx1, ctx2 = context_i(A, B, alpha), context_ii(A, B, alpha)
    lf1 = bound_factor("det20", ctx1, n)
    lf2 = bound_factor("det21", ctx2, n)
    return [
        log_certificate("det20", ld_g, lf1 + ld_h, tol, **_ctx_params(ctx1, lf1, v=v, n=n)),
        log_certificate("det21", lf2 + ld_a, ld_g, tol, **_ctx_params(ctx2, lf2, v=v, n=n)),
    ]


def check_det_proposition(A, B, alpha=None, geometric: Optional[np.ndarray] = None,
                          tol: float = SCALAR_RTOL) -> Certificate:
    """``|det(A # B)| <= sec^4n(a) / 2^n |det(I + A)| |det(I + B)|``."""
    A, B = as_matrix(A), as_matrix(B)
    n = A.shape[0]
    alpha = common_alpha(A, B, alpha)
    geo = geometric if geometric is not None else geometric_mean(A, B, 0.5)
    eye = np.eye(n)
    lf = bound_factor("det_proposition", BoundContext(1.0, 1.0, alpha), n)
    rhs = lf + log_abs_det(eye + A) + log_abs_det(eye + B)
    return log_certificate("det_proposition", log_abs_det(geo), rhs, tol,
                           alpha=alpha, factor=lf, n=n)


def check_det_weighted_note(A, B, v: float, alpha=None, means: Optional[Means] = None,
                            tol: float = SCALAR_RTOL) -> Certificate:
    """``|det(A #_v B)| <= sec^3n(a) |det(A nabla_v B)|``."""
    A, B = as_matrix(A), as_matrix(B)
    n = A.shape[0]
    alpha = common_alpha(A, B, alpha)
    means = means or compute_means(A, B, v)
    lf = bound_factor("det_note", BoundContext(1.0, 1.0, alpha), n)
    return log_certificate("det_note", log_abs_det(means.geometric),
                           lf + log_abs_det(means.arithmetic), tol,
                           v=v, alpha=alpha, factor=lf, n=n)


# --- singular values and norms ----------------------------------------------


def check_sv_corollary(A, B, v: float, alpha=None, means: Optional[Means] = None,
                       tol: float = SCALAR_RTOL) -> list[Certificate]:
    """Per-index singular value bounds; ``2 n`` certificates (upper side first)."""
    A, B = as_matrix(A), as_matrix(B)
    alpha = common_alpha(A, B, alpha)
    means = means or compute_means(A, B, v)
    s_h, s_g, s_a = (singular_values(M) for M in means)
    ctx1, ctx2 = context_i(A, B, alpha), context_ii(A, B, alpha)
    f1 = bound_factor("sv_upper", ctx1)
    f2 = bound_factor("sv_lower", ctx2)
    upper = [scalar_certificate("sv_upper", s_g[j], f1 * s_h[j], tol,
                                **_ctx_params(ctx1, f1, v=v, j=j + 1))
             for j in range(len(s_g))]
    lower = [scalar_certificate("sv_lower", f2 * s_a[j], s_g[j], tol,
                                **_ctx_params(ctx2, f2, v=v, j=j + 1))
             for j in range(len(s_g))]
    return upper + lower


def norm_kinds(n: int, schatten_ps: Sequence[float] = SCHATTEN_SPOT) -> list[NormKind]:
    """All Ky Fan norms for dimension ``n`` followed by Schatten spot checks."""
    return all_ky_fan(n) + [schatten(p) for p in schatten_ps]


def check_norm_corollary(A, B, v: float, norm_kind, alpha=None,
                         means: Optional[Means] = None,
                         tol: float = SCALAR_RTOL) -> list[Certificate]:
    """``||#|| <= sec^5 K ||!||`` and ``||#|| >= cos^5 K^-1 ||nabla||``."""
    A, B = as_matrix(A), as_matrix(B)
    kind = parse_norm_kind(norm_kind)
    alpha = common_alpha(A, B, alpha)
    means = means or compute_means(A, B, v)
    n_h, n_g, n_a = (unitarily_invariant_norm(M, kind) for M in means)
    ctx1, ctx2 = context_i(A, B, alpha), context_ii(A, B, alpha)
    f1 = bound_factor("norm_upper", ctx1)
    f2 = bound_factor("norm_lower", ctx2)
    notes = QUARTER_PI_NOTE if abs(alpha - math.pi / 4) < 1e-12 else ""
    return [
        scalar_certificate("norm_upper", n_g, f1 * n_h, tol, notes=notes,
                           **_ctx_params(ctx1, f1, v=v, norm=str(kind))),
        scalar_certificate("norm_lower", f2 * n_a, n_g, tol, notes=notes,
                           **_ctx_params(ctx2, f2, v=v, norm=str(kind))),
    ]


def check_norm_proposition(A, B, norm_kind, alpha=None,
                           geometric: Optional[np.ndarray] = None,
                           tol: float = SCALAR_RTOL) -> Certificate:
    """``||A # B|| <= sec^5(a)/2 ||I + A|| ||I + B||``."""
    A, B = as_matrix(A), as_matrix(B)
    kind = parse_norm_kind(norm_kind)
    alpha = common_alpha(A, B, alpha)
    geo = geometric if geometric is not None else geometric_mean(A, B, 0.5)
    eye = np.eye(A.shape[0])
    f = bound_factor("norm_proposition", BoundContext(1.0, 1.0, alpha))
    rhs = f * unitarily_invariant_norm(eye + A, kind) * unitarily_invariant_norm(eye + B, kind)
    return scalar_certificate("norm_proposition", unitarily_invariant_norm(geo, kind), rhs, tol,
                              alpha=alpha, factor=f, norm=str(kind))


# --- auxiliary lemmas -------------------------------------------------------


def _worst_scalar(result_id, lhs, rhs, tol, **params) -> Certificate:
    """Fold per-index scalar slacks into one certificate (normalized margins)."""
    lhs, rhs = np.asarray(lhs, float), np.asarray(rhs, float)
    rel = (rhs - lhs) / (1.0 + np.maximum(np.abs(lhs), np.abs(rhs)))
    j = int(np.argmin(rel))
    return Certificate(result_id, float(rel[j]), 1.0, tol, dict(params, j=j + 1))


def check_lemma_suite(A, alpha=None, tol_loewner: float = LOEWNER_RTOL,
                      tol_scalar: float = SCALAR_RTOL) -> list[Certificate]:
    """Seven auxiliary inequalities for one sector matrix ``A``.

    Loewner: ``Re(A^-1) <= (Re A)^-1 <= sec^2 Re(A^-1)``; determinant:
    ``det Re A <= |det A| <= sec^n det Re A``; eigen/singular values:
    ``v_j(Re A) <= s_j(A) <= sec^2 v_j(Re A)``; norms:
    ``||A|| <= sec ||Re A||`` over all Ky Fan and spot Schatten norms.
    """
    A = as_matrix(A)
    n = A.shape[0]
    alpha = common_alpha(A, None, alpha)
    sec = 1.0 / math.cos(alpha)
    re = real_part(A)
    re_inv = hermitize(np.linalg.inv(re))
    inv_re = real_part(np.linalg.inv(A))
    ld_re, ld_a = log_abs_det(re), log_abs_det(A)
    ev = eigvalsh(re)[::-1]
    sv = singular_values(A)
    kinds = norm_kinds(n)
    norms_a = [unitarily_invariant_norm(A, k) for k in kinds]
    norms_re = [sec * unitarily_invariant_norm(re, k) for k in kinds]
    certs = [
        loewner_certificate("lemma21", inv_re, re_inv, tol_loewner, alpha=alpha),
        loewner_certificate("lemma22", re_inv, sec ** 2 * inv_re, tol_loewner,
                            alpha=alpha, factor=sec ** 2),
        log_certificate("lemma31", ld_re, ld_a, tol_scalar, alpha=alpha),
        log_certificate("lemma32", ld_a, n * math.log(sec) + ld_re, tol_scalar,
                        alpha=alpha, factor=n * math.log(sec)),
        _worst_scalar("lemma41", ev, sv, tol_scalar, alpha=alpha),
        _worst_scalar("lemma42", sv, sec ** 2 * ev, tol_scalar, alpha=alpha, factor=sec ** 2),
        _worst_scalar("lemma43", norms_a, norms_re, tol_scalar, alpha=alpha, factor=sec),
    ]
    certs[-1].params["norm"] = str(kinds[certs[-1].params["j"] - 1])
    return certs


def check_bhatia_kittaneh(P, Q, tol: float = 1e-10) -> Certificate:
    """``||P Q|| <= ||P + Q||^2 / 4`` in operator norm for PSD ``P, Q``."""
    P, Q = hermitize(as_matrix(P)), hermitize(as_matrix(Q))
    for M in (P, Q):
        w = eigvalsh(M)
        if w[0] < -1e-10 * max(1.0, abs(w[-1])):
            raise NotPSDError("input is not positive semidefinite")
    return scalar_certificate("bhatia_kittaneh", spectral_norm(P @ Q),
                              0.25 * spectral_norm(P + Q) ** 2, tol)


def check_bakherad_equivalence(P, Q, r: float, band: float = 1e-8) -> Certificate:
    """Agreement of ``P <= r Q`` with ``||P^1/2 Q^-1/2|| <= r^1/2``.

    Within ``band`` (relative) of the critical ratio the two decisions are not
    required to agree. The margin is ``|r - r_crit|`` on agreement and its
    negative on disagreement.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    P, Q = _require_pd(P, Q)
    loewner, _ = loewner_leq(P, r * Q, tol=0.0)
    cross = spectral_norm(psd_power(P, 0.5) @ psd_power(Q, -0.5))
    by_norm = cross <= math.sqrt(r)
    r_crit = cross ** 2
    gap = abs(r - r_crit)
    width = band * max(1.0, r_crit)
    if gap <= width:
        margin = 0.0
    else:
        margin = gap if loewner == by_norm else -gap
    return Certificate("bakherad", float(margin), max(1.0, r_crit), band,
                       dict(r=r, r_crit=r_crit, loewner=bool(loewner), norm_form=bool(by_norm)))
