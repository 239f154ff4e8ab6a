"""2-CNF MAXSAT to maximum-satisfied-conjunctions over a DNF.

Clause ``i`` = ``(a v b)`` becomes the pair ``(a & x_i)``, ``(b & ~x_i)``
where ``x_i`` is a fresh variable numbered after the original ones.  A unit
clause ``(a)`` is treated as ``(a v a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import (
    Assignment,
    CnfFormula,
    Conjunction,
    DnfFormula,
    FormulaError,
    Literal,
)


@dataclass(frozen=True)
class ReductionMap:
    original_num_vars: int
    aux_var_of_clause: Mapping[int, int]
    conj_pair_of_clause: Mapping[int, tuple[int, int]]
    clause_of_conj: Mapping[int, tuple[int, int]]

    @property
    def num_clauses(self) -> int:
        return len(self.aux_var_of_clause)


def reduce(f: CnfFormula) -> tuple[DnfFormula, ReductionMap]:
    m, n = f.num_vars, len(f.clauses)
    conjunctions = []
    aux, pairs, back = {}, {}, {}
    for clause in f.clauses:
        lits = clause.literals
        if len(lits) > 2:
            raise FormulaError(f"clause {clause.id} has {len(lits)} literals; 2-CNF required")
        first, second = lits[0], lits[-1]
        x = m + clause.id
        left, right = 2 * clause.id - 1, 2 * clause.id
        conjunctions.append(Conjunction(left, (first, Literal(x))))
        conjunctions.append(Conjunction(right, (second, Literal(x, True))))
        aux[clause.id] = x
        pairs[clause.id] = (left, right)
        back[left] = (clause.id, 1)
        back[right] = (clause.id, 2)
    return DnfFormula(m + n, tuple(conjunctions)), ReductionMap(m, aux, pairs, back)


def lift_assignment(a_dnf: Assignment, rmap: ReductionMap) -> Assignment:
    """Restrict an assignment over ``V u X`` to the original variables."""
    return a_dnf.restrict(rmap.original_num_vars)


def lift_subset(conj_ids: Iterable[int], rmap: ReductionMap) -> frozenset[int]:
    out = set()
    for cid in conj_ids:
        if cid not in rmap.clause_of_conj:
            raise FormulaError(f"conjunction id {cid} out of range 1..{2 * rmap.num_clauses}")
        out.add(rmap.clause_of_conj[cid][0])
    return frozenset(out)


def extend_assignment(a: Assignment, f: CnfFormula) -> Assignment:
    """Forward direction of the correspondence: pick ``x_i`` so that a
    satisfied clause has its pair member satisfied (side 1 on ties)."""
    values = list(a.values)
    for clause in f.clauses:
        first = clause.literals[0]
        values.append(first.value(a) or not clause.literals[-1].value(a))
    return Assignment(tuple(values))
