"""Exhaustive ground truth, a seeded instance generator and the differential
harness that compares the graph search against it."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .formula import Assignment, CnfFormula, DnfFormula, FormulaError, parse_cnf, to_dimacs
from .search import SoundnessError
from .solver import SolveOptions, solve

ORACLE_CAP = 24
_CHUNK_BITS = 16


class OracleCapExceeded(ValueError):
    pass


def _literal_table(num_vars: int, rows: Sequence[Sequence[int]], conjunctive: bool,
                   cap: int) -> tuple[int, Assignment]:
    if num_vars > cap:
        raise OracleCapExceeded(f"{num_vars} variables exceed oracle cap {cap}")
    if not rows:
        return 0, Assignment.all_false(num_vars)
    total = 1 << num_vars
    chunk = 1 << min(num_vars, _CHUNK_BITS)
    # variable 1 is the most significant bit: index order == lexicographic order
    shifts = np.array([num_vars - v for v in range(1, num_vars + 1)], dtype=np.int64)
    best, best_index = -1, 0
    for lo in range(0, total, chunk):
        idx = np.arange(lo, lo + chunk, dtype=np.int64)
        bits = ((idx[:, None] >> shifts[None, :]) & 1).astype(bool)
        score = np.zeros(chunk, dtype=np.int32)
        for row in rows:
            cols = [bits[:, abs(l) - 1] if l > 0 else ~bits[:, abs(l) - 1] for l in row]
            hit = np.logical_and.reduce(cols) if conjunctive else np.logical_or.reduce(cols)
            score += hit
        i = int(np.argmax(score))
        if score[i] > best:
            best, best_index = int(score[i]), lo + i
    witness = Assignment(tuple(bool(best_index >> (num_vars - v) & 1) for v in range(1, num_vars + 1)))
    return best, witness


def oracle_maxsat(f: CnfFormula, cap: int = ORACLE_CAP) -> tuple[int, Assignment]:
    """Exact optimum over all ``2**m`` assignments; lexicographically smallest witness."""
    return _literal_table(f.num_vars, f.to_lists(), False, cap)


def oracle_dnf_max(d: DnfFormula, cap: int = ORACLE_CAP) -> tuple[int, Assignment]:
    return _literal_table(d.num_vars, d.to_lists(), True, cap)


# --- generator ---------------------------------------------------------------

@dataclass(frozen=True)
class GenParams:
    num_vars: int
    num_clauses: int
    seed: int = 0
    unit_fraction: float = 0.0


def gen_instance(params: GenParams) -> CnfFormula:
    """Seeded random 2-CNF: distinct variables within a clause, fair polarity."""
    m, n = params.num_vars, params.num_clauses
    if m < 1:
        raise ValueError("num_vars must be >= 1")
    if n < 0 or not 0.0 <= params.unit_fraction <= 1.0:
        raise ValueError(f"bad parameters {params}")
    units = round(params.unit_fraction * n)
    if m < 2 and units < n:
        raise ValueError("two-literal clauses need at least two distinct variables")
    rng = random.Random(params.seed)
    unit_slots = set(rng.sample(range(n), units))
    clauses = []
    for i in range(n):
        k = 1 if i in unit_slots else 2
        chosen = rng.sample(range(1, m + 1), k)
        clauses.append([v if rng.random() < 0.5 else -v for v in chosen])
    return CnfFormula.from_lists(m, clauses)


def instance_seed(seed: int, index: int) -> int:
    # stable across processes, unlike hash()
    return random.Random(f"{seed}/{index}").getrandbits(63)


# --- shrinking ---------------------------------------------------------------

def _compact(num_vars: int, clauses: list[list[int]]) -> CnfFormula:
    used = sorted({abs(l) for c in clauses for l in c})
    remap = {v: i for i, v in enumerate(used, 1)}
    rows = [[remap[abs(l)] * (1 if l > 0 else -1) for l in c] for c in clauses]
    return CnfFormula.from_lists(max(len(used), 1), rows)


def shrink(f: CnfFormula, still_failing: Callable[[CnfFormula], bool]) -> CnfFormula:
    """Greedy removal of clauses, then of variables (with every clause that
    mentions them), keeping ``still_failing`` true after each step."""
    current = f
    changed = True
    while changed:
        changed = False
        rows = current.to_lists()
        for i in range(len(rows)):
            trial = _compact(current.num_vars, rows[:i] + rows[i + 1:])
            if rows[:i] + rows[i + 1:] and still_failing(trial):
                current, changed = trial, True
                break
        if changed:
            continue
        for v in range(1, current.num_vars + 1):
            kept = [c for c in rows if v not in map(abs, c)]
            if kept and len(kept) < len(rows):
                trial = _compact(current.num_vars, kept)
                if still_failing(trial):
                    current, changed = trial, True
                    break
    return current


# --- differential harness ------------------------------------------------------

@dataclass
class Shortfall:
    instance: str
    solver_size: int
    oracle_size: int
    minimized: str
    minimized_solver_size: int
    minimized_oracle_size: int
    fixture: str | None = None


@dataclass
class DiffReport:
    instances_run: int = 0
    agreements: int = 0
    shortfalls: list[Shortfall] = field(default_factory=list)
    soundness_violations: list[str] = field(default_factory=list)
    truncated: int = 0
    seed: int = 0
    generator_params: list[dict] = field(default_factory=list)

    @property
    def agreement_rate(self) -> float:
        return self.agreements / self.instances_run if self.instances_run else 1.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["agreement_rate"] = round(self.agreement_rate, 6)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class SoundnessAbort(RuntimeError):
    def __init__(self, report: DiffReport, instance: str, path: Path | None):
        super().__init__(f"soundness violation on instance written to {path}")
        self.report = report
        self.instance = instance
        self.path = path


def merge_reports(reports: Iterable[DiffReport]) -> DiffReport:
    """Order-independent merge: records are sorted canonically."""
    out = DiffReport()
    reports = list(reports)
    for r in reports:
        out.instances_run += r.instances_run
        out.agreements += r.agreements
        out.truncated += r.truncated
        out.shortfalls.extend(r.shortfalls)
        out.soundness_violations.extend(r.soundness_violations)
        out.generator_params.extend(r.generator_params)
    out.seed = min((r.seed for r in reports), default=0)
    out.shortfalls.sort(key=lambda s: (s.instance, s.minimized))
    out.soundness_violations.sort()
    out.generator_params.sort(key=lambda p: json.dumps(p, sort_keys=True))
    return out


def _solver_size(f: CnfFormula, options: SolveOptions) -> int:
    return solve(f, options).best_size


def fixture_text(f: CnfFormula, solver_size: int, oracle_size: int, source: str = "") -> str:
    comments = [f"solver_size {solver_size}", f"oracle_size {oracle_size}"]
    if source:
        comments.append(f"source {source}")
    return to_dimacs(f, comments)


def read_fixture(text: str) -> tuple[CnfFormula, int, int]:
    recorded = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) == 3 and parts[0] == "c" and parts[1] in ("solver_size", "oracle_size"):
            recorded[parts[1]] = int(parts[2])
    if set(recorded) != {"solver_size", "oracle_size"}:
        raise FormulaError("fixture lacks recorded solver_size/oracle_size comments")
    return parse_cnf(text), recorded["solver_size"], recorded["oracle_size"]


def replay_fixture(text: str, options: SolveOptions | None = None) -> dict:
    f, solver_rec, oracle_rec = read_fixture(text)
    solver_now = _solver_size(f, options or SolveOptions())
    oracle_now = oracle_maxsat(f)[0]
    return {
        "recorded": [solver_rec, oracle_rec],
        "replayed": [solver_now, oracle_now],
        "reproduced": (solver_now, oracle_now) == (solver_rec, oracle_rec),
    }


def check_instance(f: CnfFormula, options: SolveOptions) -> tuple[int, int, bool]:
    """(solver size, oracle size, truncated); soundness errors propagate."""
    result = solve(f, options)
    optimum = oracle_maxsat(f)[0]
    if result.best_size > optimum:
        raise SoundnessError(f"solver claims {result.best_size} > optimum {optimum}")
    return result.best_size, optimum, result.truncated


def run_diff(
    params: GenParams | Sequence[GenParams],
    count: int,
    out_dir: str | Path | None = None,
    options: SolveOptions | None = None,
    instances: Iterable[CnfFormula] = (),
) -> DiffReport:
    """Compare solve() with the oracle on ``count`` generated instances per
    parameter set (plus any explicit ``instances``).

    Shortfalls are shrunk and, when ``out_dir`` is given, written as DIMACS
    fixtures.  A soundness violation writes the instance and raises
    :class:`SoundnessAbort`.
    """
    options = options or SolveOptions()
    plist = [params] if isinstance(params, GenParams) else list(params)
    out = Path(out_dir) if out_dir is not None else None
    report = DiffReport(seed=min((p.seed for p in plist), default=0),
                        generator_params=[asdict(p) for p in plist] if count else [])

    def jobs():
        yield from instances
        for p in plist:
            for i in range(count):
                yield gen_instance(GenParams(p.num_vars, p.num_clauses, instance_seed(p.seed, i), p.unit_fraction))

    for f in jobs():
        text = to_dimacs(f)
        try:
            got, optimum, truncated = check_instance(f, options)
        except SoundnessError as exc:
            report.instances_run += 1
            report.soundness_violations.append(text)
            path = None
            if out is not None:
                out.mkdir(parents=True, exist_ok=True)
                path = out / f"violation-{len(report.soundness_violations):04d}.cnf"
                path.write_text(to_dimacs(f, [f"soundness violation: {exc}"]))
            raise SoundnessAbort(report, text, path) from exc
        report.instances_run += 1
        report.truncated += truncated
        if got == optimum:
            report.agreements += 1
            continue
        small = shrink(f, lambda g: _solver_size(g, options) < oracle_maxsat(g)[0])
        s_small, o_small = _solver_size(small, options), oracle_maxsat(small)[0]
        record = Shortfall(text, got, optimum, to_dimacs(small), s_small, o_small)
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"shortfall-{len(report.shortfalls) + 1:04d}.cnf"
            path.write_text(fixture_text(small, s_small, o_small, f"shrunk from {got}<{optimum}"))
            record.fixture = str(path)
        report.shortfalls.append(record)
    return report
