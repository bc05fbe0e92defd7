"""
A small family of positive unital linear maps.

``MapSpec`` instances are immutable; build them through the classmethods
(:meth:`MapSpec.identity`, :meth:`MapSpec.pinching`, ...). Squares of map
outputs are always taken as matrix squares ``Phi(X) @ Phi(X)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .certificate import LOEWNER_RTOL, Certificate, loewner_certificate
from .errors import DimensionError, SingularMatrixError
from .matrix_core import adjoint, as_matrix, hermitize

MAP_KINDS = ("identity", "pinching", "compression", "normalized_trace", "unitary_mixture")
ISOMETRY_TOL = 1e-10


@dataclass(frozen=True)
class MapSpec:
    kind: str
    n: int
    out_dim: int
    blocks: Optional[tuple[tuple[int, ...], ...]] = None
    isometry: Optional[np.ndarray] = field(default=None, compare=False)
    weights: Optional[tuple[float, ...]] = None
    unitaries: Optional[tuple[np.ndarray, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        for arr in (self.isometry, *(self.unitaries or ())):
            if arr is not None:
                arr.setflags(write=False)

    @classmethod
    def identity(cls, n: int) -> "MapSpec":
        return cls("identity", n, n)

    @classmethod
    def pinching(cls, n: int, blocks: Sequence[Sequence[int]]) -> "MapSpec":
        """Block-diagonal restriction; ``blocks`` partitions ``range(n)``."""
        blocks = tuple(tuple(int(i) for i in b) for b in blocks)
        flat = sorted(i for b in blocks for i in b)
        if flat != list(range(n)) or any(len(b) == 0 for b in blocks):
            raise ValueError(f"blocks {blocks} do not partition range({n})")
        return cls("pinching", n, n, blocks=blocks)

    @classmethod
    def compression(cls, V) -> "MapSpec":
        """``X -> V* X V`` for an isometry ``V`` of shape ``(n, k)``."""
        V = np.array(V, dtype=np.complex128)
        if V.ndim != 2 or V.shape[1] > V.shape[0]:
            raise DimensionError(f"isometry must be n x k with k <= n, got {V.shape}")
        gram = adjoint(V) @ V
        if np.linalg.norm(gram - np.eye(V.shape[1]), 2) > ISOMETRY_TOL:
            raise ValueError("V is not an isometry (V* V != I)")
        return cls("compression", V.shape[0], V.shape[1], isometry=V)

    @classmethod
    def normalized_trace(cls, n: int, k: int = 1) -> "MapSpec":
        return cls("normalized_trace", n, k)

    @classmethod
    def unitary_mixture(cls, weights, unitaries) -> "MapSpec":
        """``X -> sum_i w_i U_i* X U_i`` with convex weights."""
        w = np.asarray(weights, dtype=float)
        Us = tuple(np.array(U, dtype=np.complex128) for U in unitaries)
        if len(w) != len(Us) or len(Us) == 0:
            raise ValueError("need one weight per unitary")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")
        n = Us[0].shape[0]
        for U in Us:
            if U.shape != (n, n) or np.linalg.norm(adjoint(U) @ U - np.eye(n), 2) > ISOMETRY_TOL:
                raise ValueError("mixture members must be n x n unitaries")
        return cls("unitary_mixture", n, n, weights=tuple(float(x) for x in w), unitaries=Us)

    def __str__(self):
        return self.kind


def apply(phi: MapSpec, X) -> np.ndarray:
    X = as_matrix(X)
    if X.shape[0] != phi.n:
        raise DimensionError(f"map expects {phi.n}x{phi.n} input, got {X.shape}")
    if phi.kind == "identity":
        return X.copy()
    if phi.kind == "pinching":
        out = np.zeros_like(X)
        for b in phi.blocks:
            idx = np.ix_(b, b)
            out[idx] = X[idx]
        return out
    if phi.kind == "compression":
        V = phi.isometry
        return adjoint(V) @ X @ V
    if phi.kind == "normalized_trace":
        return (np.trace(X) / phi.n) * np.eye(phi.out_dim, dtype=np.complex128)
    if phi.kind == "unitary_mixture":
        return sum(w * (adjoint(U) @ X @ U) for w, U in zip(phi.weights, phi.unitaries))
    raise ValueError(f"unknown map kind {phi.kind!r}")


def apply_squared(phi: MapSpec, X) -> np.ndarray:
    """``Phi(X)`` squared as a matrix product (not ``Phi(Phi(X))``)."""
    Y = hermitize(apply(phi, X))
    return hermitize(Y @ Y)


def inverse_of_image(phi: MapSpec, X) -> np.ndarray:
    Y = hermitize(apply(phi, X))
    w = np.linalg.eigvalsh(Y)
    if w[0] <= Y.shape[0] * np.finfo(float).eps * max(abs(w[-1]), 1.0):
        raise SingularMatrixError(f"Phi(X) is singular for map {phi.kind}")
    return hermitize(np.linalg.inv(Y))


def default_family(n: int, rng: np.random.Generator, kinds=None) -> list[MapSpec]:
    """One member per requested kind, sized for ``n x n`` inputs."""
    from .ensembles import random_isometry, random_unitary_rng

    kinds = kinds or ("identity", "pinching", "compression", "unitary_mixture")
    family = []
    for kind in kinds:
        if kind == "identity":
            family.append(MapSpec.identity(n))
        elif kind == "pinching":
            half = max(1, n // 2)
            blocks = [tuple(range(half))] + ([tuple(range(half, n))] if half < n else [])
            family.append(MapSpec.pinching(n, blocks))
        elif kind == "compression":
            family.append(MapSpec.compression(random_isometry(n, max(1, n - 1), rng)))
        elif kind == "normalized_trace":
            family.append(MapSpec.normalized_trace(n, 1))
        elif kind == "unitary_mixture":
            w = rng.dirichlet(np.ones(3))
            Us = [random_unitary_rng(n, rng) for _ in range(3)]
            family.append(MapSpec.unitary_mixture(w / w.sum(), Us))
        else:
            raise ValueError(f"unknown map kind {kind!r}; expected one of {MAP_KINDS}")
    return family


def check_choi(phi: MapSpec, P, tol: float = LOEWNER_RTOL) -> Certificate:
    """Certify ``Phi(P)^-1 <= Phi(P^-1)`` for positive definite ``P``."""
    P = hermitize(as_matrix(P))
    lhs = inverse_of_image(phi, P)
    rhs = hermitize(apply(phi, np.linalg.inv(P)))
    return loewner_certificate("choi", lhs, rhs, tol, map=phi.kind)
