"""Figures written next to CLI reports (Agg backend, files only)."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_margins(rows: Sequence, path):
    """Strip plot of relative margins ``margin / scale`` per result id.

    Points left of the dashed line (``-tol``) are failures.
    """
    ids = sorted({r.result_id for r in rows})
    fig, ax = plt.subplots(figsize=(8, 0.35 * len(ids) + 1.5))
    rng = np.random.default_rng(0)
    for i, rid in enumerate(ids):
        rel = np.array([r.margin / r.scale for r in rows if r.result_id == rid])
        colors = ["tab:red" if m < -r_tol else "tab:blue"
                  for m, r_tol in zip(rel, [r.tol for r in rows if r.result_id == rid])]
        ax.scatter(rel, i + rng.uniform(-0.25, 0.25, rel.size), s=6, c=colors, alpha=0.6)
    ax.set_xscale("symlog", linthresh=1e-10)
    ax.axvline(0.0, color="k", lw=0.8)
    tol = min((r.tol for r in rows), default=1e-9)
    ax.axvline(-tol, color="tab:red", lw=0.8, ls="--")
    ax.set_yticks(range(len(ids)))
    ax.set_yticklabels(ids, fontsize=8)
    ax.set_xlabel("relative margin")
    ax.set_title("certificate margins")
    return _finish(fig, path)


def plot_numerical_range(points, path, alpha=None, eigenvalues=None):
    """Boundary polygon of ``W(A)``; draws the sector wedge when ``alpha`` is given."""
    pts = np.asarray(points)
    closed = np.append(pts, pts[:1])
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.fill(closed.real, closed.imag, alpha=0.2, color="tab:blue")
    ax.plot(closed.real, closed.imag, color="tab:blue", lw=1)
    if eigenvalues is not None:
        ev = np.asarray(eigenvalues)
        ax.plot(ev.real, ev.imag, "k.", ms=5, label="eigenvalues")
        ax.legend(loc="best", fontsize=8)
    if alpha is not None:
        r = 1.1 * max(np.abs(pts).max(), 1e-12)
        for sgn in (1, -1):
            ax.plot([0, r * math.cos(alpha)], [0, sgn * r * math.sin(alpha)], "r--", lw=0.8)
    ax.axhline(0, color="0.7", lw=0.5)
    ax.axvline(0, color="0.7", lw=0.5)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    return _finish(fig, path)
