"""
Seeded generators for positive definite, sector and accretive-dissipative
matrices.

A sector matrix with prescribed angle is built as

    A = H + i tan(alpha) H^1/2 C H^1/2,

with ``H`` positive definite (this becomes ``Re A``) and ``C`` Hermitian with
``||C||_2 = 1``. Then ``(Re A)^-1/2 Im A (Re A)^-1/2 = tan(alpha) C`` and the
minimal sector angle is ``alpha``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrix_core import adjoint, hermitize, psd_power


def trial_seed(master: int, *indices: int) -> int:
    """64-bit seed for one trial, derived from ``master`` and its indices.

    Uses ``SeedSequence`` spawn keys, so the stream for a trial depends only on
    its coordinates and never on scheduling order.
    """
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(i) for i in indices))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class EnsembleSpec:
    n: int
    alpha_target: float = 0.0
    re_spectrum: tuple[float, float] = (0.5, 2.0)
    seed: int = 0
    exact_angle: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.alpha_target < math.pi / 2:
            raise ValueError(f"alpha_target must lie in [0, pi/2), got {self.alpha_target}")
        _check_range(*self.re_spectrum)


def _check_range(lo, hi):
    if not 0 < lo <= hi:
        raise ValueError(f"need 0 < lo <= hi, got ({lo}, {hi})")


def random_unitary_rng(n: int, rng: np.random.Generator) -> np.ndarray:
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    # fix the phase of each column so the factorization is unique
    d = np.diag(R)
    phases = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * phases[None, :]


def random_unitary(n: int, seed=0) -> np.ndarray:
    """Haar-like unitary from the QR factorization of a complex Gaussian."""
    if n < 1:
        raise ValueError("n must be positive")
    return random_unitary_rng(n, _rng(seed))


def random_isometry(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    return random_unitary_rng(n, rng)[:, :k]


def _spectrum(n, lo, hi, rng):
    lam = rng.uniform(lo, hi, size=n)
    lam[0] = lo
    if n > 1:
        lam[-1] = hi
    return lam


def random_psd(n: int, lo: float, hi: float, seed=0) -> np.ndarray:
    """Hermitian positive definite matrix with spectrum in ``[lo, hi]``.

    Both endpoints are attained when ``n >= 2``; for ``n == 1`` the single
    eigenvalue is ``lo``.
    """
    _check_range(lo, hi)
    rng = _rng(seed)
    if lo == hi:
        return lo * np.eye(n, dtype=np.complex128)
    U = random_unitary_rng(n, rng)
    lam = _spectrum(n, lo, hi, rng)
    return hermitize((U * lam) @ adjoint(U))


def _unit_hermitian(n, rng, exact, definite=False):
    """Hermitian ``C`` with ``||C||_2 = 1`` (exact) or ``<= 1``."""
    U = random_unitary_rng(n, rng)
    if definite:
        c = rng.uniform(0.1, 1.0, size=n)
        c[np.argmax(c)] = 1.0
    else:
        c = rng.uniform(-1.0, 1.0, size=n)
        i = np.argmax(np.abs(c))
        c[i] = 1.0 if c[i] >= 0 else -1.0
    if not exact:
        c = c * rng.uniform(0.0, 1.0)
    return hermitize((U * c) @ adjoint(U))


def _sector_from(H, C, alpha):
    root = psd_power(H, 0.5)
    return H + 1j * math.tan(alpha) * hermitize(root @ C @ root)


def random_sector(spec: EnsembleSpec) -> np.ndarray:
    """Sector matrix with ``Re A`` spectrum in ``spec.re_spectrum``."""
    rng = _rng(spec.seed)
    lo, hi = spec.re_spectrum
    H = random_psd(spec.n, lo, hi, rng)
    if spec.alpha_target == 0.0:
        return H
    C = _unit_hermitian(spec.n, rng, spec.exact_angle)
    return _sector_from(H, C, spec.alpha_target)


def random_accretive_dissipative(n: int, lo: float, hi: float, seed=0) -> np.ndarray:
    """Matrix with ``Re A`` and ``Im A`` both positive definite, angle ``<= pi/4``."""
    _check_range(lo, hi)
    rng = _rng(seed)
    H = random_psd(n, lo, hi, rng)
    C = _unit_hermitian(n, rng, exact=True, definite=True)
    return _sector_from(H, C, math.pi / 4)


def random_spectrum_range(rng: np.random.Generator, max_ratio: float = 20.0):
    """Random ``(lo, hi)`` with condition ratio up to ``max_ratio``."""
    lo = rng.uniform(0.2, 1.0)
    return lo, lo * math.exp(rng.uniform(0.0, math.log(max_ratio)))


def random_sector_pair(n: int, alpha: float, seed: int, exact_angle: bool = True):
    """Two independent sector matrices sharing the target angle ``alpha``."""
    rng = np.random.default_rng(seed)
    sa, sb = rng.integers(0, 2**63, size=2)
    A = random_sector(EnsembleSpec(n, alpha, random_spectrum_range(rng), int(sa), exact_angle))
    B = random_sector(EnsembleSpec(n, alpha, random_spectrum_range(rng), int(sb), exact_angle))
    return A, B
