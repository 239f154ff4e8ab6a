"""Empirical scaling study: wall time and graph statistics over a grid of
instance sizes, with a least-squares fit of log time against log n, log m."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .oracle import GenParams, gen_instance, instance_seed
from .solver import SolveOptions, solve

DEFAULT_CLAUSES = (10, 20, 30, 40, 50)
DEFAULT_VARS = (5, 10, 15, 20)


@dataclass(frozen=True)
class BenchRow:
    clauses: int
    vars: int
    reps: int
    median_seconds: float
    trie_nodes: int
    span_edges: int
    recursive_calls: int
    pruned: int
    truncated: int
    best_size: int


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    slope_clauses: float | None
    slope_vars: float | None
    time_budget: float | None

    def to_dict(self) -> dict:
        return {
            "rows": [asdict(r) for r in self.rows],
            "slope_clauses": self.slope_clauses,
            "slope_vars": self.slope_vars,
            "time_budget": self.time_budget,
        }


def _median_int(xs: Sequence[int]) -> int:
    return int(statistics.median(xs))


def bench_point(num_clauses: int, num_vars: int, reps: int = 3, seed: int = 0,
                options: SolveOptions | None = None) -> BenchRow:
    options = options or SolveOptions()
    times, stats, truncated, best = [], [], 0, []
    for r in range(reps):
        f = gen_instance(GenParams(num_vars, num_clauses, instance_seed(seed, num_clauses * 1000 + num_vars * 10 + r)))
        start = time.perf_counter()
        result = solve(f, options)
        times.append(time.perf_counter() - start)
        stats.append(result.stats)
        truncated += result.truncated
        best.append(result.best_size)
    return BenchRow(
        num_clauses, num_vars, reps,
        statistics.median(times),
        _median_int([s.trie_nodes for s in stats]),
        _median_int([s.span_edges for s in stats]),
        _median_int([s.recursive_calls for s in stats]),
        _median_int([s.pruned for s in stats]),
        truncated,
        _median_int(best),
    )


def fit_slopes(rows: Iterable[BenchRow]) -> tuple[float | None, float | None]:
    """Exponents (a, b) of ``time ~ n^a m^b`` by least squares on logs.

    Rows that hit the time budget are left out (their times are only lower
    bounds); ``None`` where the remaining rows do not vary that axis.
    """
    rows = [r for r in rows if r.median_seconds > 0 and not r.truncated]
    if len(rows) < 2:
        return None, None
    n = np.log([r.clauses for r in rows])
    m = np.log([r.vars for r in rows])
    t = np.log([r.median_seconds for r in rows])
    cols, names = [np.ones_like(t)], []
    if np.ptp(n) > 0:
        cols.append(n)
        names.append("n")
    if np.ptp(m) > 0:
        cols.append(m)
        names.append("m")
    if not names:
        return None, None
    coef, *_ = np.linalg.lstsq(np.column_stack(cols), t, rcond=None)
    fitted = dict(zip(names, coef[1:]))
    pick = lambda k: round(float(fitted[k]), 3) if k in fitted else None  # noqa: E731
    return pick("n"), pick("m")


def run_bench(clauses: Sequence[int] = DEFAULT_CLAUSES, num_vars: Sequence[int] = DEFAULT_VARS,
              reps: int = 1, seed: int = 0, time_budget: float | None = 5.0,
              options: SolveOptions | None = None) -> BenchReport:
    options = options or SolveOptions(time_budget=time_budget)
    rows = tuple(bench_point(n, m, reps, seed, options) for n in clauses for m in num_vars)
    a, b = fit_slopes(rows)
    return BenchReport(rows, a, b, options.time_budget)


def format_table(report: BenchReport) -> str:
    head = f"{'n':>4} {'m':>4} {'seconds':>10} {'nodes':>7} {'spans':>8} {'rec':>6} {'pruned':>7} {'trunc':>5} {'best':>5}"
    lines = [head]
    for r in report.rows:
        lines.append(
            f"{r.clauses:>4} {r.vars:>4} {r.median_seconds:>10.4f} {r.trie_nodes:>7} {r.span_edges:>8} "
            f"{r.recursive_calls:>6} {r.pruned:>7} {r.truncated:>5} {r.best_size:>5}"
        )
    used = sum(1 for r in report.rows if not r.truncated)
    lines.append(f"log-log slope in n: {report.slope_clauses}, in m: {report.slope_vars} "
                 f"(fitted on {used} untruncated rows; a cubic-in-each bound would be 3 and 3)")
    if any(r.truncated for r in report.rows):
        lines.append(f"rows with trunc > 0 hit the {report.time_budget}s per-solve budget; their times are lower bounds")
    return "\n".join(lines)
