"""Certificate records and the tolerance policy applied to their margins."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .matrix_core import eigvalsh, hermitize

LOEWNER_RTOL = 1e-9
SCALAR_RTOL = 1e-8


@dataclass
class Certificate:
    """Outcome of one inequality check.

    ``margin`` is ``lambda_min(rhs - lhs)`` for Loewner results, ``rhs - lhs``
    for scalar ones and a log-ratio for determinant ones; the check passes when
    ``margin >= -tol * scale``.
    """

    result_id: str
    margin: float
    scale: float
    tol: float
    params: dict[str, Any] = field(default_factory=dict)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.margin >= -self.tol * self.scale)

    def to_dict(self) -> dict:
        return {
            "result_id": self.result_id,
            "margin": self.margin,
            "scale": self.scale,
            "tol": self.tol,
            "pass": self.passed,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "notes": self.notes,
        }


def _plain(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def loewner_certificate(result_id, lhs, rhs, tol=LOEWNER_RTOL, **params) -> Certificate:
    """Certify ``lhs <= rhs``; scale is ``1 + max(||lhs||, ||rhs||)``."""
    notes = params.pop("notes", "")
    lhs, rhs = hermitize(lhs), hermitize(rhs)
    margin = float(eigvalsh(rhs - lhs)[0])
    scale = 1.0 + max(np.linalg.norm(lhs, 2), np.linalg.norm(rhs, 2))
    return Certificate(result_id, margin, float(scale), tol, params, notes)


def scalar_certificate(result_id, lhs, rhs, tol=SCALAR_RTOL, **params) -> Certificate:
    """Certify ``lhs <= rhs`` for real scalars, relative to ``1 + max(|lhs|, |rhs|)``."""
    notes = params.pop("notes", "")
    scale = 1.0 + max(abs(lhs), abs(rhs))
    return Certificate(result_id, float(rhs - lhs), float(scale), tol, params, notes)


def log_certificate(result_id, log_lhs, log_rhs, tol=SCALAR_RTOL, **params) -> Certificate:
    """Certify ``exp(log_lhs) <= exp(log_rhs)`` by the log-domain slack."""
    notes = params.pop("notes", "")
    return Certificate(result_id, float(log_rhs - log_lhs), 1.0, tol, params, notes)
