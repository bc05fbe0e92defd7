"""
Randomized verification sweeps and their reports.

A sweep is a grid of ``(alpha, trial)`` tasks. Each task draws its own pair of
sector matrices from a seed derived from the master seed and the task
coordinates, so the report does not depend on how tasks are scheduled.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg as sla

from . import checker
from .certificate import LOEWNER_RTOL, SCALAR_RTOL, Certificate
from .ensembles import random_sector_pair, trial_seed
from .maps import MAP_KINDS, check_choi, default_family
from .matrix_core import real_part

RESULT_GROUPS = (
    "hm_gm_am",
    "kantorovich_reverse",
    "tan_xie",
    "theorem26",
    "det_corollary",
    "det_proposition",
    "det_note",
    "sv_corollary",
    "norm_corollary",
    "norm_proposition",
    "lemmas",
    "choi",
    "bhatia_kittaneh",
    "bakherad",
)
DEFAULT_MAPS = ("identity", "pinching", "compression", "unitary_mixture")
CSV_COLUMNS = ("result_id", "trial", "v", "alpha", "h", "K", "factor", "margin", "pass")
BAKHERAD_SCAN = (0.5, 1 - 1e-6, 1.0, 1 + 1e-6, 2.0)
THREADS_ENV = "SECTORIA_THREADS"


@dataclass
class SweepConfig:
    n: Sequence[int] = (4,)
    trials: int = 10
    alphas: Sequence[float] = (0.2, 0.6, 1.0)
    vs: Sequence[float] = (0.5,)
    maps: Sequence[str] = DEFAULT_MAPS
    results: Sequence[str] = RESULT_GROUPS
    seed: int = 0
    tol: float = LOEWNER_RTOL

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not self.n or any(k < 1 for k in self.n):
            raise ValueError("dimensions must be positive")
        if not self.alphas or any(not 0 <= a < math.pi / 2 for a in self.alphas):
            raise ValueError("alpha values must lie in [0, pi/2)")
        if not self.vs or any(not 0 <= v <= 1 for v in self.vs):
            raise ValueError("weights must lie in [0, 1]")
        unknown = set(self.maps) - set(MAP_KINDS)
        if unknown or not self.maps:
            raise ValueError(f"unknown map kinds {sorted(unknown)}")
        unknown = set(self.results) - set(RESULT_GROUPS)
        if unknown or not self.results:
            raise ValueError(f"unknown result ids {sorted(unknown)}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class Row:
    result_id: str
    trial: int
    v: Optional[float]
    alpha: float
    h: Optional[float]
    K: Optional[float]
    factor: Optional[float]
    margin: float
    passed: bool
    scale: float
    tol: float
    seed: int
    n: int
    extra: dict = field(default_factory=dict)


def _row(cert: Certificate, trial, alpha, seed, n, v=None) -> Row:
    p = cert.params
    extra = {k: p[k] for k in ("map", "norm", "j", "r") if k in p}
    return Row(cert.result_id, trial, p.get("v", v), alpha, p.get("h"), p.get("K"),
               p.get("factor"), cert.margin, cert.passed, cert.scale, cert.tol, seed, n, extra)


def run_trial(cfg: SweepConfig, alpha_index: int, trial: int) -> list[Row]:
    """All selected certificates for one ``(alpha, trial)`` task."""
    alpha = cfg.alphas[alpha_index]
    n = cfg.n[trial % len(cfg.n)]
    seed = trial_seed(cfg.seed, alpha_index, trial)
    A, B = random_sector_pair(n, alpha, seed)
    family = default_family(n, np.random.default_rng(trial_seed(cfg.seed, alpha_index, trial, 1)),
                            cfg.maps)
    sel = set(cfg.results)
    lt, st = cfg.tol, max(cfg.tol, SCALAR_RTOL)
    rows: list[Row] = []

    def add(certs, v=None):
        rows.extend(_row(c, trial, alpha, seed, n, v) for c in certs)

    reA, reB = real_part(A), real_part(B)
    for v in cfg.vs:
        if "hm_gm_am" in sel:
            add(checker.check_hm_gm_am_psd(reA, reB, v, tol=lt), v)
        if "kantorovich_reverse" in sel:
            add([checker.check_kantorovich_reverse_psd(reA, reB, v, tol=lt)], v)
        needs_means = sel & {"tan_xie", "theorem26", "det_corollary", "det_note",
                             "sv_corollary", "norm_corollary"}
        if not needs_means:
            continue
        means = checker.compute_means(A, B, v)
        if "tan_xie" in sel:
            add(checker.check_tan_xie(A, B, v, means=means, tol=lt), v)
        if "theorem26" in sel:
            for phi in family:
                add(checker.check_theorem_reverse(A, B, v, phi, means=means, tol=lt), v)
        if "det_corollary" in sel:
            add(checker.check_det_corollary(A, B, v, means=means, tol=st), v)
        if "det_note" in sel:
            add([checker.check_det_weighted_note(A, B, v, means=means, tol=st)], v)
        if "sv_corollary" in sel:
            add(checker.check_sv_corollary(A, B, v, means=means, tol=st), v)
        if "norm_corollary" in sel:
            for kind in checker.norm_kinds(n):
                add(checker.check_norm_corollary(A, B, v, kind, means=means, tol=st), v)

    if sel & {"det_proposition", "norm_proposition"}:
        geo = checker.geometric_mean(A, B, 0.5)
        if "det_proposition" in sel:
            add([checker.check_det_proposition(A, B, geometric=geo, tol=st)], 0.5)
        if "norm_proposition" in sel:
            add([checker.check_norm_proposition(A, B, k, geometric=geo, tol=st)
                 for k in checker.norm_kinds(n)], 0.5)
    if "lemmas" in sel:
        add(checker.check_lemma_suite(A, tol_loewner=lt, tol_scalar=st))
        add(checker.check_lemma_suite(B, tol_loewner=lt, tol_scalar=st))
    if "choi" in sel:
        add([check_choi(phi, reA, tol=lt) for phi in family])
    if "bhatia_kittaneh" in sel:
        add([checker.check_bhatia_kittaneh(reA, reB)])
    if "bakherad" in sel:
        r_crit = float(sla.eigh(reA, reB, eigvals_only=True)[-1])
        add([checker.check_bakherad_equivalence(reA, reB, f * r_crit) for f in BAKHERAD_SCAN])
    return rows


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "0") or 0)
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> list[Row]:
    tasks = [(a, t) for a in range(len(cfg.alphas)) for t in range(cfg.trials)]
    workers = resolve_workers(workers)
    if workers == 1:
        chunks = [run_trial(cfg, a, t) for a, t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda at: run_trial(cfg, *at), tasks))
    return [row for chunk in chunks for row in chunk]


def aggregate(rows: Sequence[Row]) -> dict:
    out: dict[str, dict] = {}
    for r in rows:
        agg = out.setdefault(r.result_id, {"count": 0, "passed": 0, "min_margin": math.inf,
                                           "min_relative_margin": math.inf,
                                           "argmin_seed": None, "argmin_trial": None})
        agg["count"] += 1
        agg["passed"] += int(r.passed)
        rel = r.margin / r.scale
        if rel < agg["min_relative_margin"]:
            agg.update(min_margin=r.margin, min_relative_margin=rel,
                       argmin_seed=r.seed, argmin_trial=r.trial)
    return dict(sorted(out.items()))


NOTES = (
    checker.PHI_SQUARED_NOTE,
    checker.KANTOROVICH_BOUNDS_NOTE,
    checker.QUARTER_PI_NOTE,
    "alpha fed to every factor is max(sector_angle(A), sector_angle(B)); "
    "the alpha column echoes the ensemble target",
    "unitarily invariant norms certified over all Ky Fan k-norms "
    "plus Schatten p in {1, 2, 3, inf}",
)


def build_report(cfg: SweepConfig, rows: Sequence[Row], wall_clock: float) -> dict:
    failures = [_row_dict(r) for r in rows if not r.passed]
    return {
        "config": asdict(cfg),
        "results": aggregate(rows),
        "total": {"count": len(rows), "passed": sum(r.passed for r in rows)},
        "failures": failures,
        "notes": list(NOTES),
        "wall_clock_seconds": wall_clock,
    }


def _row_dict(r: Row) -> dict:
    d = {c: getattr(r, "passed" if c == "pass" else c) for c in CSV_COLUMNS}
    d.update(seed=r.seed, n=r.n, scale=r.scale, tol=r.tol, **r.extra)
    return d


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not serializable: {type(x)}")


def report_csv(rows: Sequence[Row]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(["" if x is None else repr(float(x)) if isinstance(x, float) else x
                         for x in (r.result_id, r.trial, r.v, r.alpha, r.h, r.K, r.factor,
                                   r.margin, str(r.passed).lower())])
    return buf.getvalue()


def verify(cfg: SweepConfig, workers: Optional[int] = None):
    """Run a sweep; returns ``(rows, report)``."""
    start = time.perf_counter()
    rows = run_sweep(cfg, workers)
    return rows, build_report(cfg, rows, time.perf_counter() - start)
