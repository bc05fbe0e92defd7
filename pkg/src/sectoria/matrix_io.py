"""JSON matrix files: ``{"n": int, "entries": [[re, im], ...]}`` in row-major order."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .matrix_core import as_matrix


class MatrixFileError(ValueError):
    pass


def matrix_to_record(A) -> dict:
    A = as_matrix(A)
    flat = A.reshape(-1)
    return {"n": int(A.shape[0]), "entries": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_record(record) -> np.ndarray:
    try:
        n = int(record["n"])
        entries = record["entries"]
        if n < 1 or len(entries) != n * n:
            raise MatrixFileError(f"expected {n * n} entries for n={n}, got {len(entries)}")
        vals = np.array([complex(float(re), float(im)) for re, im in entries])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MatrixFileError):
            raise
        raise MatrixFileError(f"malformed matrix record: {exc}") from exc
    return as_matrix(vals.reshape(n, n))


def read_matrix(path) -> np.ndarray:
    try:
        record = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MatrixFileError(f"cannot read matrix file {path}: {exc}") from exc
    return matrix_from_record(record)


def write_matrix(path, A, **extra) -> None:
    record = matrix_to_record(A)
    record.update(extra)
    Path(path).write_text(json.dumps(record, indent=2) + "\n")
