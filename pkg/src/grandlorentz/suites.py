"""Suite runners: corpora, parameter grids and job scheduling for the harness."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

from .families import function_corpus, sequence_corpus
from .grand import EpsSearch
from .hardy import (
    HardyParams,
    hardy_grand_head_check,
    hardy_grand_tail_check,
    hardy_head_check,
    hardy_tail_check,
)
from .kfun import KCouple, gor_chain_check
from .verify import (
    bochkarev_chain_checks,
    grand_hy_check,
    hy_classical_check,
    hy_lorentz_ratio,
    imboch_checks,
    remark38_check,
    theorem16_check,
)

inf = math.inf
SUITES = ("hardy", "bochkarev", "imboch", "remark38", "hy", "grand-hy", "theorem16", "kfun")
COROLLARY_SEARCH = EpsSearch(grid_size=256)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 7
    count: int = 20
    level: int = 6
    max_len: int = 128
    system: str = "walsh"
    q_values: tuple = ()

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("corpus is empty (count must be >= 1)")
        if self.level < 0 or self.max_len < 1:
            raise ValueError("level must be >= 0 and max_len >= 1")
        if self.system not in ("walsh", "trig"):
            raise ValueError(f"unknown system {self.system!r}")


def _qs(cfg: SuiteConfig, default):
    return tuple(cfg.q_values) or default


def _hardy_grid():
    for r in (0.5, 1.0, 2.0):
        for alpha in (0.1, 0.25, 0.4):
            for q in (0.5, 1.0, 2.0, 4.0, inf):
                if q >= r:
                    yield alpha, r, q


def hardy_item(cfg: SuiteConfig, i: int, f):
    out = []
    for alpha, r, q in _hardy_grid():
        hp = HardyParams(alpha, r, q)
        if q != inf and alpha < 1.0 / r:
            out.append(hardy_head_check(f, hp))
        out.append(hardy_tail_check(f, hp))
    for r in (0.5, 1.0, 2.0):
        for q in (1.0, 2.0, 4.0):
            if q < r:
                continue
            for theta in (0.0, 0.5):
                out.append(hardy_grand_head_check(f, r, q, theta, COROLLARY_SEARCH))
                out.append(hardy_grand_tail_check(f, r, q, theta, COROLLARY_SEARCH))
    return out


def bochkarev_item(cfg: SuiteConfig, i: int, a):
    """One report per q: the tightest n over 1..len(a)."""
    out = []
    for q in _qs(cfg, (3.0, 4.0, inf)):
        reps = bochkarev_chain_checks(a, q, range(1, len(a) + 1))
        failed = [r for r in reps if r.passed is False]
        worst = failed[0] if failed else min(reps, key=lambda r: r.margin / r.rhs if r.rhs else 0.0)
        worst.notes = (worst.notes + "; " if worst.notes else "") + f"tightest of n = 1..{len(a)}"
        out.append(worst)
    return out


def imboch_item(cfg: SuiteConfig, i: int, a):
    out = []
    for p, q in ((1.0, 2.0), (2.0, 3.0), (2.0, 4.0)):
        out.extend(imboch_checks(a, p, q, (1, 4, 16)))
    return out


def remark38_item(cfg: SuiteConfig, i: int, a):
    return [remark38_check(a, q) for q in _qs(cfg, (3.0, 4.0))]


def hy_item(cfg: SuiteConfig, i: int, f):
    out = [hy_classical_check(f, p) for p in (1.25, 1.5, 2.0)]
    for p in (1.5, 1.9):
        for q in (1.0, 2.0, 4.0):
            out.append(hy_lorentz_ratio(f, p, q, cfg.system))
    return out


def grand_hy_item(cfg: SuiteConfig, i: int, f):
    return [
        grand_hy_check(f, theta, q, cfg.system)
        for theta in (0.0, 0.5)
        for q in _qs(cfg, (1.0, 2.0, 4.0, inf))
    ]


def theorem16_item(cfg: SuiteConfig, i: int, f):
    out = []
    for q in _qs(cfg, (3.0, 4.0, inf)):
        for tau in sorted({2.0, 4.0, q}):
            out.append(theorem16_check(f, q, tau, cfg.system))
    return out


def kfun_item(cfg: SuiteConfig, i: int, a):
    couple = KCouple(2.0, 3.0, inf)
    return [gor_chain_check(a, couple, eta, 4.0) for eta in (0.25, 0.5)]


_ITEMS = {
    "hardy": ("functions", hardy_item),
    "bochkarev": ("sequences", bochkarev_item),
    "imboch": ("sequences", imboch_item),
    "remark38": ("sequences", remark38_item),
    "hy": ("functions", hy_item),
    "grand-hy": ("functions", grand_hy_item),
    "theorem16": ("functions", theorem16_item),
    "kfun": ("sequences", kfun_item),
}


@lru_cache(maxsize=8)
def _corpus(kind: str, seed: int, count: int, level: int, max_len: int):
    if kind == "functions":
        corpus = function_corpus(seed, count, level)
        return [f for _, f in corpus], [label for label, _ in corpus]
    seqs = sequence_corpus(seed, count, max_len)
    return seqs, [f"seq[{i}]" for i in range(len(seqs))]


def _run_job(job):
    suite, cfg, i = job
    kind, item = _ITEMS[suite]
    max_len = min(cfg.max_len, 32) if suite == "kfun" else cfg.max_len
    members, labels = _corpus(kind, cfg.seed, cfg.count, cfg.level, max_len)
    reports = item(cfg, i, members[i])
    for r in reports:
        r.params = {"item": labels[i], **r.params}
        r.seed = cfg.seed
    return reports


def run_suite(suite: str, cfg: SuiteConfig, workers: int = 1):
    """Reports of one suite (or "all"), sorted by check name then parameters."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _ITEMS:
            raise ValueError(f"unknown suite {name!r}")
    jobs = [(name, cfg, i) for name in names for i in range(cfg.count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_job, jobs))
    else:
        chunks = [_run_job(j) for j in jobs]
    reports = [r for chunk in chunks for r in chunk]
    reports.sort(key=lambda r: r.sort_key())
    return reports


def with_overrides(cfg: SuiteConfig, **kw) -> SuiteConfig:
    return replace(cfg, **{k: v for k, v in kw.items() if v is not None})
