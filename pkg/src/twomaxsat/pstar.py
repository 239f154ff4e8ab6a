"""p-graphs and p*-graphs of a single variable sequence.

Positions run ``0..k+1``: 0 is ``#``, ``k+1`` is ``$`` and ``1..k`` are the
sequence slots.  A span ``(i, j)`` (``j >= i + 2``) jumps over positions
``i+1..j-1``, which become false on any path that uses it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .formula import Assignment
from .sequencing import VariableSequence

ROOT = "#"
END = "$"


@dataclass(frozen=True)
class PStarGraph:
    conj_id: int
    labels: tuple[int | str, ...]
    optional: tuple[bool, ...]
    spans: frozenset[tuple[int, int]]
    removed: frozenset[int] = frozenset()
    num_vars: int = 0

    @property
    def k(self) -> int:
        return len(self.labels) - 2

    @property
    def main_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((j, j + 1) for j in range(len(self.labels) - 1))

    @property
    def num_optional(self) -> int:
        return sum(self.optional)


def build_p_graph(s: VariableSequence) -> PStarGraph:
    labels = (ROOT, *s.variables, END)
    optional = (False, *(slot.optional for slot in s.slots), False)
    base = frozenset((j - 1, j + 1) for j in range(1, len(labels) - 1) if optional[j])
    return PStarGraph(s.conj_id, labels, optional, base, s.removed, s.num_vars)


def close_spans(g: PStarGraph) -> PStarGraph:
    """Closure by the interior-optional rule: one pass per maximal optional run."""
    spans = set(g.spans)
    n = len(g.labels)
    j = 1
    while j < n - 1:
        if not g.optional[j]:
            j += 1
            continue
        start = j
        while j < n - 1 and g.optional[j]:
            j += 1
        # run of optionals covers start..j-1; any i in start-1..j-2 to any later end
        for a in range(start - 1, j - 1):
            for b in range(a + 2, j + 1):
                spans.add((a, b))
    return replace(g, spans=frozenset(spans))


def close_spans_fixpoint(g: PStarGraph) -> PStarGraph:
    """Literal pairwise overlap-union closure; slow, used to cross-check."""
    spans = set(g.spans)
    changed = True
    while changed:
        changed = False
        for (a1, b1), (a2, b2) in combinations(sorted(spans), 2):
            # overlapped: one span starts strictly inside the other
            if a1 < a2 < b1 or a2 < a1 < b2:
                merged = (min(a1, a2), max(b1, b2))
                if merged not in spans:
                    spans.add(merged)
                    changed = True
    return replace(g, spans=frozenset(spans))


def count_paths(g: PStarGraph) -> int:
    n = len(g.labels)
    ways = [0] * n
    ways[0] = 1
    out: dict[int, list[int]] = {i: [i + 1] for i in range(n - 1)}
    for a, b in g.spans:
        out[a].append(b)
    for i in range(n - 1):
        for b in out[i]:
            ways[b] += ways[i]
    return ways[-1]


class PathLimitExceeded(RuntimeError):
    pass


def enumerate_paths(g: PStarGraph, cap: int = 1 << 16) -> list[Assignment]:
    """Every ``#`` -> ``$`` path as the assignment it induces.

    Visited slots are true; slots jumped by a span and removed (negated)
    variables are false.  Refuses when the path count exceeds ``cap``.
    """
    total = count_paths(g)
    if total > cap:
        raise PathLimitExceeded(f"{total} paths exceed cap {cap}")
    n = len(g.labels)
    out: dict[int, list[int]] = {i: [i + 1] for i in range(n - 1)}
    for a, b in sorted(g.spans):
        out[a].append(b)
    result = []
    stack = [(0, ())]
    while stack:
        pos, visited = stack.pop()
        if pos == n - 1:
            result.append(Assignment.from_true(visited, g.num_vars))
            continue
        for nxt in out[pos]:
            label = g.labels[nxt]
            stack.append((nxt, visited if label == END else visited + (label,)))
    return result


def pstar_graph(s: VariableSequence) -> PStarGraph:
    return close_spans(build_p_graph(s))


def pstar_to_dot(g: PStarGraph, name: str | None = None) -> str:
    name = name or f"D{g.conj_id}"
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for i, label in enumerate(g.labels):
        text = label if isinstance(label, str) else f"c{label}"
        if g.optional[i]:
            text = f"({text},*)"
        lines.append(f'  p{i} [label="{text}"];')
    for a, b in g.main_edges:
        lines.append(f"  p{a} -> p{b};")
    for a, b in sorted(g.spans):
        lines.append(f"  p{a} -> p{b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
