"""Variable frequencies, the global variable order and sorted variable sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .formula import Conjunction, DnfFormula, FormulaError

MANDATORY = "mandatory"
OPTIONAL = "optional"


@dataclass(frozen=True)
class FrequencyTable:
    count: Mapping[int, int]
    total: int

    def fraction(self, variable: int) -> str:
        return f"{self.count[variable]}/{self.total}"


@dataclass(frozen=True)
class GlobalOrdering:
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(1, len(self.order) + 1)):
            raise FormulaError(f"ordering {list(self.order)} is not a permutation of 1..{len(self.order)}")
        object.__setattr__(self, "_rank", {v: r for r, v in enumerate(self.order, 1)})

    def rank(self, variable: int) -> int:
        return self._rank[variable]

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class Slot:
    variable: int
    kind: str

    @property
    def optional(self) -> bool:
        return self.kind == OPTIONAL

    def __str__(self) -> str:
        return f"(c{self.variable},*)" if self.optional else f"c{self.variable}"


@dataclass(frozen=True)
class VariableSequence:
    conj_id: int
    slots: tuple[Slot, ...]
    removed: frozenset[int]
    num_vars: int

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(s.variable for s in self.slots)

    @property
    def num_optional(self) -> int:
        return sum(s.optional for s in self.slots)

    def __len__(self) -> int:
        return len(self.slots)

    def __str__(self) -> str:
        return ".".join(["#", *map(str, self.slots), "$"])


def compute_frequencies(d: DnfFormula) -> FrequencyTable:
    # absence and positive occurrence count once each, negation counts zero
    live = [c for c in d.conjunctions if not c.contradictory]
    count = {v: 0 for v in range(1, d.num_vars + 1)}
    for conj in live:
        neg = conj.negative
        for v in count:
            if v not in neg:
                count[v] += 1
    return FrequencyTable(count, len(live))


def build_ordering(t: FrequencyTable, tie_break: str | Sequence[int] = "by-index") -> GlobalOrdering:
    """Descending frequency.  ``tie_break`` is ``"by-index"`` or an explicit
    permutation, which is then used verbatim."""
    if isinstance(tie_break, str):
        if tie_break != "by-index":
            raise FormulaError(f"unknown tie-break policy {tie_break!r}")
        return GlobalOrdering(tuple(sorted(t.count, key=lambda v: (-t.count[v], v))))
    order = tuple(tie_break)
    if sorted(order) != sorted(t.count):
        raise FormulaError(f"explicit order {list(order)} is not a permutation of 1..{len(t.count)}")
    return GlobalOrdering(order)


def build_sequence(c: Conjunction, o: GlobalOrdering, m: int | None = None) -> VariableSequence:
    if c.contradictory:
        raise FormulaError(f"conjunction {c.id} is contradictory")
    m = len(o) if m is None else m
    if m != len(o):
        raise FormulaError(f"ordering covers {len(o)} variables, formula has {m}")
    pos, neg = c.positive, c.negative
    slots = tuple(
        Slot(v, MANDATORY if v in pos else OPTIONAL)
        for v in o.order if v not in neg
    )
    return VariableSequence(c.id, slots, neg, m)


def build_sequences(d: DnfFormula, o: GlobalOrdering) -> list[VariableSequence]:
    """Sequences for every non-contradictory conjunction, in id order."""
    return [build_sequence(c, o, d.num_vars) for c in d.conjunctions if not c.contradictory]
