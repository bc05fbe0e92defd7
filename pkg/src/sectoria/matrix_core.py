"""
Dense complex matrix primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single validation gate. Every eigendecomposition Hermitizes its
input first, so roundoff in the skew part never reaches LAPACK.
"""
from __future__ import annotations

from typing import NamedTuple, Union

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionError,
    NotHermitianError,
    NotPSDError,
    SingularMatrixError,
)

#: Relative clamp width for eigenvalues treated as roundoff zeros.
PSD_CLAMP = 1e-10
#: Default relative tolerance for Loewner comparisons.
LOEWNER_TOL = 1e-9
HERMITIAN_TOL = 1e-10


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray  # ascending
    vectors: np.ndarray  # columns are eigenvectors


class NormKind(NamedTuple):
    family: str  # "ky_fan" or "schatten"
    param: float

    def __str__(self):
        p = self.param
        if self.family == "schatten" and np.isinf(p):
            return "schatten:inf"
        return f"{self.family}:{int(p) if float(p).is_integer() else p}"


def ky_fan(k: int) -> NormKind:
    return NormKind("ky_fan", int(k))


def schatten(p: float) -> NormKind:
    return NormKind("schatten", float(p))


def parse_norm_kind(kind: Union[str, NormKind]) -> NormKind:
    """Accept ``NormKind`` or strings like ``"ky_fan:2"``, ``"schatten:inf"``."""
    if isinstance(kind, NormKind):
        return kind
    family, _, param = str(kind).partition(":")
    family = family.strip().lower().replace("-", "_")
    if family in ("ky_fan", "kyfan"):
        return ky_fan(int(param))
    if family == "schatten":
        return schatten(np.inf if param.strip() in ("inf", "oo") else float(param))
    raise ValueError(f"unknown norm kind {kind!r}")


def as_matrix(A) -> np.ndarray:
    """Validate and convert ``A`` to a square, finite complex128 array."""
    A = np.array(A, dtype=np.complex128)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def adjoint(A: np.ndarray) -> np.ndarray:
    return A.conj().T


def hermitize(H: np.ndarray) -> np.ndarray:
    return 0.5 * (H + adjoint(H))


def _check_hermitian(H: np.ndarray, name="matrix") -> np.ndarray:
    H = as_matrix(H)
    dev = np.linalg.norm(H - adjoint(H), 2)
    if dev > HERMITIAN_TOL * (1.0 + np.linalg.norm(H, 2)):
        raise NotHermitianError(f"{name} is not Hermitian (skew part {dev:.3e})")
    return hermitize(H)


def cartesian_decompose(A) -> tuple[np.ndarray, np.ndarray]:
    """Split ``A`` into Hermitian parts ``(Re A, Im A)`` with ``A = Re A + i Im A``."""
    A = as_matrix(A)
    Ah = adjoint(A)
    return 0.5 * (A + Ah), (A - Ah) / 2j


def real_part(A) -> np.ndarray:
    return cartesian_decompose(A)[0]


def imag_part(A) -> np.ndarray:
    return cartesian_decompose(A)[1]


def hermitian_eig(H) -> HermitianEig:
    """Eigendecomposition of a (nearly) Hermitian matrix, eigenvalues ascending."""
    H = _check_hermitian(H)
    try:
        w, U = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        # eigh does not expose its residual; report the off-diagonal mass instead
        residual = float(np.linalg.norm(H - np.diag(np.diag(H))))
        raise ConvergenceError(f"eigensolver did not converge: {exc}", residual) from exc
    return HermitianEig(w, U)


def eigvalsh(H) -> np.ndarray:
    return np.linalg.eigvalsh(_check_hermitian(H))


def lambda_min(H) -> float:
    return float(eigvalsh(H)[0])


def lambda_max(H) -> float:
    return float(eigvalsh(H)[-1])


def psd_power(H, t: float) -> np.ndarray:
    """Fractional power ``H**t`` of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-10 ||H||, 0)`` are clamped to zero; anything more
    negative raises :class:`NotPSDError`. Negative ``t`` needs ``H`` positive
    definite.
    """
    w, U = hermitian_eig(H)
    scale = max(abs(w[0]), abs(w[-1]))
    if w[0] < -PSD_CLAMP * scale:
        raise NotPSDError(f"matrix has negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    if t < 0 and w[0] <= len(w) * np.finfo(float).eps * scale:
        raise SingularMatrixError("negative power of a singular matrix")
    if t == 1:
        wt = w
    else:
        with np.errstate(divide="ignore"):
            wt = np.where(w > 0, w ** t, 0.0 if t > 0 else 1.0)
    return hermitize((U * wt) @ adjoint(U))


def psd_sqrt(H) -> np.ndarray:
    return psd_power(H, 0.5)


def singular_values(A) -> np.ndarray:
    """Singular values in descending order."""
    return np.linalg.svd(as_matrix(A), compute_uv=False)


def log_abs_det(A) -> float:
    """Natural log of ``|det A|`` via pivoted LU; ``-inf`` for singular input."""
    sign, logdet = np.linalg.slogdet(as_matrix(A))
    if sign == 0:
        return -np.inf
    return float(logdet)


def spectral_norm(A) -> float:
    return float(singular_values(A)[0])


def loewner_leq(X, Y, tol: float = LOEWNER_TOL) -> tuple[bool, float]:
    """Decide ``X <= Y`` in the Loewner order.

    Returns ``(holds, margin)`` with ``margin = lambda_min(Y - X)``; the
    relation holds when ``margin >= -tol * (1 + ||Y - X||_2)``.
    """
    X = _check_hermitian(X, "X")
    Y = _check_hermitian(Y, "Y")
    if X.shape != Y.shape:
        raise DimensionError(f"shape mismatch {X.shape} vs {Y.shape}")
    w = np.linalg.eigvalsh(Y - X)
    margin = float(w[0])
    spread = max(abs(w[0]), abs(w[-1]))
    return margin >= -tol * (1.0 + spread), margin


def unitarily_invariant_norm(A, kind) -> float:
    """Ky Fan ``k`` or Schatten ``p`` norm of ``A``."""
    kind = parse_norm_kind(kind)
    s = singular_values(A)
    if kind.family == "ky_fan":
        k = int(kind.param)
        if not 1 <= k <= len(s):
            raise ValueError(f"Ky Fan index {k} outside 1..{len(s)}")
        return float(np.sum(s[:k]))
    p = kind.param
    if not p >= 1:
        raise ValueError(f"Schatten p must be >= 1, got {p}")
    if np.isinf(p):
        return float(s[0])
    if s[0] == 0:
        return 0.0
    # factor out s_1 so large p does not overflow
    return float(s[0] * np.sum((s / s[0]) ** p) ** (1.0 / p))


def all_ky_fan(n: int) -> list[NormKind]:
    return [ky_fan(k) for k in range(1, n + 1)]
