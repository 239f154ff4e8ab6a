"""End-to-end pipeline: reduce, sequence, build the trie-like graph, search,
lift, and re-check the answer by direct evaluation before returning it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .formula import (
    Assignment,
    CnfFormula,
    DnfFormula,
    satisfied_clause_ids,
    satisfied_conjunction_ids,
)
from .pstar import pstar_graph
from .reduction import ReductionMap, lift_assignment, lift_subset, reduce
from .search import SearchOptions, SoundnessError, SolveResult, conflict_map, search
from .sequencing import GlobalOrdering, build_ordering, build_sequences, compute_frequencies
from .triegraph import TrieLikeGraph, build_trie_like_graph


@dataclass
class SolveOptions(SearchOptions):
    order: str | Sequence[int] = "by-index"


@dataclass(frozen=True)
class MaxSatResult:
    """Clause-level answer; ``dnf`` keeps the conjunction-level result."""

    best_size: int
    clause_ids: frozenset[int]
    assignment: Assignment
    satisfied_count: int
    dnf: SolveResult
    num_vars: int
    num_clauses: int

    @property
    def truncated(self) -> bool:
        return self.dnf.truncated

    @property
    def stats(self):
        return self.dnf.stats


@dataclass(frozen=True)
class Pipeline:
    """Intermediate artifacts, handy for inspection and DOT output."""

    dnf: DnfFormula
    ordering: GlobalOrdering
    sequences: tuple
    pgraphs: tuple
    graph: TrieLikeGraph


def build_pipeline(d: DnfFormula, order: str | Sequence[int] = "by-index") -> Pipeline:
    ordering = build_ordering(compute_frequencies(d), order)
    seqs = tuple(build_sequences(d, ordering))
    pgraphs = tuple(pstar_graph(s) for s in seqs)
    graph = build_trie_like_graph(seqs, pgraphs, d.num_vars)
    return Pipeline(d, ordering, seqs, pgraphs, graph)


def check_dnf_result(d: DnfFormula, result: SolveResult) -> None:
    satisfied = satisfied_conjunction_ids(d, result.best_assignment)
    missing = result.best_conj_ids - satisfied
    if missing or len(result.best_conj_ids) != result.best_size:
        raise SoundnessError(
            f"conjunctions {sorted(missing)} reported but not satisfied by {result.best_assignment.bits()}"
        )


def solve_dnf(d: DnfFormula, options: SolveOptions | None = None) -> SolveResult:
    options = options or SolveOptions()
    literals = {c.id: (c.positive, c.negative) for c in d.conjunctions if not c.contradictory}
    result = search(build_pipeline(d, options.order).graph, options, conflict_map(literals))
    check_dnf_result(d, result)
    return result


def solve(f: CnfFormula, options: SolveOptions | None = None) -> MaxSatResult:
    d, rmap = reduce(f)
    inner = solve_dnf(d, options)
    return lift_result(f, rmap, inner)


def lift_result(f: CnfFormula, rmap: ReductionMap, inner: SolveResult) -> MaxSatResult:
    clause_ids = lift_subset(inner.best_conj_ids, rmap)
    assignment = lift_assignment(inner.best_assignment, rmap)
    satisfied = satisfied_clause_ids(f, assignment)
    if not clause_ids <= satisfied:
        raise SoundnessError(
            f"clauses {sorted(clause_ids - satisfied)} reported but false under {assignment.bits()}"
        )
    return MaxSatResult(len(clause_ids), clause_ids, assignment, len(satisfied), inner,
                        f.num_vars, len(f.clauses))
