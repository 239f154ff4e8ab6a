"""CNF/DNF formulas, truth assignments and DIMACS-style I/O.

Variables are plain 1-based integers.  Literals are small frozen records
that convert to and from signed DIMACS integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class FormulaError(ValueError):
    """Malformed instance text or an invalid formula."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Literal:
    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 1:
            raise FormulaError(f"variable index must be >= 1, got {self.variable}")

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise FormulaError("0 is not a literal")
        return cls(abs(value), value < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def __neg__(self) -> "Literal":
        return Literal(self.variable, not self.negated)

    def value(self, assignment: "Assignment") -> bool:
        return assignment[self.variable] != self.negated

    def __str__(self) -> str:
        return f"{'~' if self.negated else ''}c{self.variable}"


def _dedupe(literals: Iterable[Literal]) -> tuple[Literal, ...]:
    return tuple(dict.fromkeys(literals))


@dataclass(frozen=True)
class Clause:
    id: int
    literals: tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "literals", _dedupe(self.literals))
        if not self.literals:
            raise FormulaError(f"clause {self.id} is empty")

    def satisfied(self, assignment: "Assignment") -> bool:
        return any(lit.value(assignment) for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " v ".join(map(str, self.literals)) + ")"


@dataclass(frozen=True)
class Conjunction:
    id: int
    literals: tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "literals", _dedupe(self.literals))
        if not self.literals:
            raise FormulaError(f"conjunction {self.id} is empty")

    @property
    def contradictory(self) -> bool:
        pos = {lit.variable for lit in self.literals if not lit.negated}
        return any(lit.negated and lit.variable in pos for lit in self.literals)

    @property
    def positive(self) -> frozenset[int]:
        return frozenset(lit.variable for lit in self.literals if not lit.negated)

    @property
    def negative(self) -> frozenset[int]:
        return frozenset(lit.variable for lit in self.literals if lit.negated)

    def satisfied(self, assignment: "Assignment") -> bool:
        return all(lit.value(assignment) for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " & ".join(map(str, self.literals)) + ")"


def _check_range(items, num_vars: int, kind: str):
    for item in items:
        for lit in item.literals:
            if lit.variable > num_vars:
                raise FormulaError(
                    f"{kind} {item.id}: variable {lit.variable} exceeds declared count {num_vars}"
                )


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for i, clause in enumerate(self.clauses, 1):
            if clause.id != i:
                raise FormulaError(f"clause ids must be 1..n in order; got {clause.id} at {i}")
        _check_range(self.clauses, self.num_vars, "clause")

    @classmethod
    def from_lists(cls, num_vars: int, clauses: Iterable[Sequence[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(
            Clause(i, tuple(Literal.from_int(x) for x in lits))
            for i, lits in enumerate(clauses, 1)
        ))

    def to_lists(self) -> list[list[int]]:
        return [[lit.to_int() for lit in c.literals] for c in self.clauses]

    @property
    def is_2cnf(self) -> bool:
        return all(len(c.literals) <= 2 for c in self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class DnfFormula:
    num_vars: int
    conjunctions: tuple[Conjunction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "conjunctions", tuple(self.conjunctions))
        for i, conj in enumerate(self.conjunctions, 1):
            if conj.id != i:
                raise FormulaError(f"conjunction ids must be 1..n in order; got {conj.id} at {i}")
        _check_range(self.conjunctions, self.num_vars, "conjunction")

    @classmethod
    def from_lists(cls, num_vars: int, conjunctions: Iterable[Sequence[int]]) -> "DnfFormula":
        return cls(num_vars, tuple(
            Conjunction(i, tuple(Literal.from_int(x) for x in lits))
            for i, lits in enumerate(conjunctions, 1)
        ))

    def to_lists(self) -> list[list[int]]:
        return [[lit.to_int() for lit in c.literals] for c in self.conjunctions]

    def __getitem__(self, conj_id: int) -> Conjunction:
        return self.conjunctions[conj_id - 1]

    def __len__(self) -> int:
        return len(self.conjunctions)


@dataclass(frozen=True)
class Assignment:
    """Total truth assignment; ``values[i]`` is the value of variable ``i + 1``."""

    values: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))

    @classmethod
    def from_true(cls, true_vars: Iterable[int], num_vars: int) -> "Assignment":
        true_vars = set(true_vars)
        bad = [v for v in true_vars if not 1 <= v <= num_vars]
        if bad:
            raise FormulaError(f"variables {sorted(bad)} outside 1..{num_vars}")
        return cls(tuple(v in true_vars for v in range(1, num_vars + 1)))

    @classmethod
    def all_false(cls, num_vars: int) -> "Assignment":
        return cls((False,) * num_vars)

    @classmethod
    def all_true(cls, num_vars: int) -> "Assignment":
        return cls((True,) * num_vars)

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def __getitem__(self, variable: int) -> bool:
        if not 1 <= variable <= len(self.values):
            raise KeyError(variable)
        return self.values[variable - 1]

    def __iter__(self) -> Iterator[bool]:
        return iter(self.values)

    def true_vars(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values, 1) if v)

    def restrict(self, num_vars: int) -> "Assignment":
        return Assignment(self.values[:num_vars])

    def bits(self) -> str:
        return " ".join("1" if v else "0" for v in self.values)

    def to_dict(self) -> dict[int, bool]:
        return {i: v for i, v in enumerate(self.values, 1)}


def satisfied_clause_ids(f: CnfFormula, a: Assignment) -> frozenset[int]:
    return frozenset(c.id for c in f.clauses if c.satisfied(a))


def count_satisfied_clauses(f: CnfFormula, a: Assignment) -> int:
    return sum(1 for c in f.clauses if c.satisfied(a))


def satisfied_conjunction_ids(d: DnfFormula, a: Assignment) -> frozenset[int]:
    # a contradictory conjunction can never evaluate true, so no special case
    return frozenset(c.id for c in d.conjunctions if c.satisfied(a))


def count_satisfied_conjunctions(d: DnfFormula, a: Assignment) -> int:
    return len(satisfied_conjunction_ids(d, a))


# --- DIMACS ---------------------------------------------------------------

def _parse(text: str, kind: str, strict: bool):
    num_vars = declared = None
    header_line = None
    items: list[tuple[list[int], int]] = []
    current: list[int] = []
    current_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header_line is not None:
                raise FormulaError("duplicate header", lineno)
            fields = line.split()
            if len(fields) != 4 or fields[1] != kind:
                raise FormulaError(f"malformed header {line!r}; expected 'p {kind} <vars> <count>'", lineno)
            try:
                num_vars, declared = int(fields[2]), int(fields[3])
            except ValueError:
                raise FormulaError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or declared < 0:
                raise FormulaError(f"negative count in header {line!r}", lineno)
            header_line = lineno
            continue
        if header_line is None:
            raise FormulaError("data before 'p' header", lineno)
        for tok in line.split():
            try:
                value = int(tok)
            except ValueError:
                raise FormulaError(f"not an integer: {tok!r}", lineno) from None
            if current_line is None:
                current_line = lineno
            if value == 0:
                if not current:
                    raise FormulaError(f"empty {'clause' if kind == 'cnf' else 'conjunction'}", lineno)
                items.append((current, current_line))
                current, current_line = [], None
                continue
            if abs(value) > num_vars:
                raise FormulaError(f"literal {value} out of range 1..{num_vars}", lineno)
            current.append(value)
    if header_line is None:
        raise FormulaError("missing 'p' header")
    if current:
        raise FormulaError("last item is not terminated by 0", current_line)
    if len(items) != declared:
        raise FormulaError(f"header declares {declared} items, found {len(items)}", header_line)
    if strict:
        for lits, lineno in items:
            if len(set(lits)) > 2:
                raise FormulaError(f"{len(set(lits))} literals; at most 2 allowed in strict mode", lineno)
    return num_vars, [lits for lits, _ in items]


def parse_cnf(text: str, strict: bool = True) -> CnfFormula:
    """Parse DIMACS CNF.  ``strict`` rejects clauses with more than 2 literals."""
    num_vars, items = _parse(text, "cnf", strict)
    return CnfFormula.from_lists(num_vars, items)


def parse_dnf(text: str, strict: bool = False) -> DnfFormula:
    """Parse the ``p dnf`` variant; contradictory conjunctions are kept and flagged."""
    num_vars, items = _parse(text, "dnf", strict)
    return DnfFormula.from_lists(num_vars, items)


def _dump(kind: str, num_vars: int, rows: list[list[int]], comments: Sequence[str]) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p {kind} {num_vars} {len(rows)}")
    out.extend(" ".join(map(str, row + [0])) for row in rows)
    return "\n".join(out) + "\n"


def to_dimacs(formula: CnfFormula | DnfFormula, comments: Sequence[str] = ()) -> str:
    if isinstance(formula, CnfFormula):
        return _dump("cnf", formula.num_vars, formula.to_lists(), comments)
    return _dump("dnf", formula.num_vars, formula.to_lists(), comments)
