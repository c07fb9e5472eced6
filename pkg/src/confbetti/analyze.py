"""Finite scans over k: monotonicity, stabilization and the v0 decomposition."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import HypothesisError
from .homology import BettiTable, betti, quotient_homology
from .manifold import ManifoldModel, validate

UNRESOLVED = "unresolved"
WORKERS_ENV = "CONFBETTI_WORKERS"


def max_workers() -> int:
    """Worker cap from CONFBETTI_WORKERS, defaulting to the available cores."""
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


def _betti_job(args):
    m, k = args
    return betti(m, k)


def betti_range(m: ManifoldModel, k_max: int, k_min: int = 0) -> list[BettiTable]:
    ks = list(range(k_min, k_max + 1))
    workers = min(max_workers(), len(ks))
    if workers <= 1:
        return [betti(m, k) for k in ks]
    # largest k first so the slow jobs start early; map keeps input order
    with ProcessPoolExecutor(max_workers=workers) as pool:
        done = dict(zip(reversed(ks), pool.map(_betti_job, [(m, k) for k in reversed(ks)])))
    return [done[k] for k in ks]


def _first_stable(seq: list[int], k_min: int):
    if len(seq) < 2 or seq[-1] != seq[-2]:
        return UNRESOLVED
    n = len(seq) - 1
    while n > 0 and seq[n - 1] == seq[-1]:
        n -= 1
    return k_min + n


@dataclass(frozen=True)
class Violation:
    degree: int
    k: int
    before: int
    after: int


@dataclass
class ScanReport:
    manifold: str
    k_range: tuple[int, int]
    tables: list[BettiTable]
    violations: list[Violation] = field(default_factory=list)
    stabilization: dict[int, int | str] = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        return not self.violations

    def series(self, i: int) -> list[int]:
        return [t[i] for t in self.tables]


def monotonicity_scan(m: ManifoldModel, k_max: int) -> ScanReport:
    """Betti tables for k = 0..k_max and every degreewise decrease between consecutive k."""
    m = validate(m)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    tables = betti_range(m, k_max)
    top = max(len(t) for t in tables)
    violations = []
    for k in range(k_max):
        for i in range(top):
            a, b = tables[k][i], tables[k + 1][i]
            if b < a:
                violations.append(Violation(i, k, a, b))
    violations.sort(key=lambda v: (v.k, v.degree))
    stab = {i: _first_stable([t[i] for t in tables], 0) for i in range(top)}
    return ScanReport(m.name, (0, k_max), tables, violations, stab)


def stability_scan(m: ManifoldModel, i: int, k_max: int) -> int | str:
    """Smallest k0 with b_i(C_k) constant on k0 <= k <= k_max, else ``"unresolved"``.

    This is empirical: a finite scan cannot rule out a later change.
    """
    m = validate(m)
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    return _first_stable([t[i] for t in betti_range(m, k_max)], 0)


@dataclass(frozen=True)
class DecompositionRow:
    degree: int
    b_k: int
    b_prev: int
    quotient: int

    @property
    def ok(self) -> bool:
        return self.b_k == self.b_prev + self.quotient


@dataclass(frozen=True)
class DecompositionLedger:
    manifold: str
    k: int
    rows: tuple[DecompositionRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def decomposition_check(m: ManifoldModel, k: int) -> DecompositionLedger:
    """Compare b_i(C_k) with b_i(C_{k-1}) + dim H_i(v0-free part) in every degree."""
    m = validate(m)
    if k < 1:
        raise ValueError("k must be at least 1")
    if m.d % 2 == 0 and not m.v0_condition:
        raise HypothesisError(
            f"{m.name} is closed, orientable and even-dimensional: the decomposition "
            "C_k = C_{k-1} + (v0-free part) is not available (hc_twisted[0] = 1)")
    cur, prev = betti(m, k), betti(m, k - 1)
    quo = quotient_homology(m, k)
    top = max(len(cur), len(prev), len(quo))
    rows = tuple(
        DecompositionRow(i, cur[i], prev[i], quo[i] if i < len(quo) else 0)
        for i in range(top)
    )
    return DecompositionLedger(m.name, k, rows)
