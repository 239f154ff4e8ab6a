"""Bottom-up search of a trie-like graph for a largest jointly satisfiable
set of conjunctions.

Both searches climb from the ``$`` leaves.  An *occurrence* is a trie node
sitting in a *group*; all members of a group share one label and came from
the same source group one level down, so every group pins down a single
label chain ``l_k, l_{k-1}, ..., $``.  For an occurrence ``o`` at node ``x``

    allowed(o) = union over links (o -> c, ids) of allowed(c) & ids

(``ids`` = everything for a tree edge), and every conjunction in
``allowed(o)`` is satisfied by the assignment that sets true exactly the
labels on the tree path ``root -> x`` plus the labels of the chain below.

:func:`build_layered` / :func:`find_subset` is the plain stack-driven
layering.  :func:`search_improved` builds the layers level by level,
merges nodes that repeat within a level and, for repeats on different trie
paths, recurses into a trie-like graph built over the upper boundary of
the reachable sets through spans.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .formula import Assignment
from .pstar import END
from .triegraph import TrieLikeGraph, assemble, is_ancestor


class SoundnessError(AssertionError):
    """A reported conjunction is not satisfied by the reported assignment."""


# --- data ------------------------------------------------------------------

class Occurrence:
    __slots__ = ("node", "group", "links", "allowed")

    def __init__(self, node: int, group: "LayerGroup"):
        self.node = node
        self.group = group
        self.links: list[tuple[Occurrence, frozenset[int] | None]] = []
        self.allowed: frozenset[int] = frozenset()

    def recompute(self) -> None:
        acc: set[int] = set()
        for child, ids in self.links:
            acc |= child.allowed if ids is None else child.allowed & ids
        self.allowed = frozenset(acc)

    def __repr__(self) -> str:
        return f"Occurrence(node={self.node}, level={self.group.level}, allowed={sorted(self.allowed)})"


class LayerGroup:
    """Same-labelled parents of one source group."""

    __slots__ = ("label", "level", "source", "members", "chain_vars")

    def __init__(self, label, level: int, source: "LayerGroup | None"):
        self.label = label
        self.level = level
        self.source = source
        self.members: dict[int, Occurrence] = {}
        below = source.chain_vars if source is not None else frozenset()
        self.chain_vars = below | {label} if isinstance(label, int) else below

    def __len__(self) -> int:
        return len(self.members)

    def nodes(self) -> list[int]:
        return list(self.members)

    def __repr__(self) -> str:
        return f"LayerGroup(label={self.label!r}, level={self.level}, nodes={self.nodes()})"


@dataclass
class LayeredGraph:
    graph: TrieLikeGraph
    levels: list[list[LayerGroup]]
    truncated: bool = False

    def groups(self, level: int) -> list[LayerGroup]:
        return self.levels[level - 1] if 0 < level <= len(self.levels) else []

    def occurrences(self) -> Iterable[Occurrence]:
        for level in self.levels:
            for g in level:
                yield from g.members.values()


@dataclass(frozen=True)
class ReachableSet:
    anchor: int
    label: int | str
    members: frozenset[int]


@dataclass(frozen=True)
class UpperBoundary:
    nodes: frozenset[int]

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class Candidate:
    conj_ids: frozenset[int]
    true_vars: frozenset[int]
    node: str
    level: int

    def assignment(self, num_vars: int) -> Assignment:
        return Assignment.from_true(self.true_vars, num_vars)


@dataclass
class SearchStats:
    trie_nodes: int = 0
    span_edges: int = 0
    levels: int = 0
    occurrences: int = 0
    recursive_calls: int = 0
    case1: int = 0
    case2: int = 0
    case3: int = 0
    pruned: int = 0
    max_depth: int = 0
    elapsed: float = 0.0

    def as_dict(self, timing: bool = True) -> dict:
        out = dict(vars(self))
        if not timing:
            out.pop("elapsed")
        return out


@dataclass(frozen=True)
class SolveResult:
    best_size: int
    best_conj_ids: frozenset[int]
    best_assignment: Assignment
    stats: SearchStats
    truncated: bool = False
    truncation_reason: str = ""
    trace: tuple[dict, ...] = ()
    candidates: tuple[frozenset[int], ...] = ()   # filled when collect_candidates is set


@dataclass
class SearchOptions:
    algorithm: str = "improved"          # "improved" or "basic"
    case2_check: bool = True             # reconnection condition for lower descendants
    depth_cap: int | None = None         # default: number of variables
    work_budget: int = 5_000_000         # occurrences + links created
    time_budget: float | None = None     # seconds of wall clock per solve
    trace: bool = False
    collect_candidates: bool = False
    prune: str = "clique"                # "count": admitted-conjunction count only
    memo: bool = True                    # skip recursive graphs already searched


class _Context:
    """Incumbent and bookkeeping shared across one solve, recursion included."""

    def __init__(self, num_vars: int, options: SearchOptions,
                 conflicts: Mapping[int, frozenset[int]] | None = None):
        self.num_vars = num_vars
        self.options = options
        self.conflicts = conflicts if options.prune == "clique" else None
        self.searched: set = set()
        self.depth_cap = options.depth_cap if options.depth_cap is not None else num_vars
        self.best: Candidate | None = None
        self.floor = 0                   # external incumbent size, pruning only
        self.stats = SearchStats()
        self.work = 0
        self.deadline = (time.perf_counter() + options.time_budget) if options.time_budget else None
        self.truncated = False
        self.reason = ""
        self.trace: list[dict] = []
        self.found: list[list[Candidate]] = []   # one list per active search call

    def bound(self, ids: Sequence[int]) -> int:
        """Upper bound on how many of ``ids`` one assignment can satisfy.

        With conflict data this is the size of a greedy clique cover of the
        conflict graph (each clique contributes at most one conjunction),
        otherwise just ``len(ids)``.
        """
        if not self.conflicts:
            return len(ids)
        cliques: list[list[int]] = []
        for cid in ids:
            clash = self.conflicts.get(cid, frozenset())
            for clique in cliques:
                if all(x in clash for x in clique):
                    clique.append(cid)
                    break
            else:
                cliques.append([cid])
        return len(cliques)

    @property
    def alpha(self) -> int:
        return max(self.floor, len(self.best.conj_ids) if self.best else 0)

    def offer(self, cand: Candidate) -> None:
        if self.options.collect_candidates and self.found and len(cand.conj_ids) >= 2:
            self.found[-1].append(cand)
        if self.best is None or len(cand.conj_ids) > len(self.best.conj_ids):
            self.best = cand

    def spend(self, amount: int) -> bool:
        self.work += amount
        if self.truncated:
            return False
        if self.work > self.options.work_budget:
            self.truncated = True
            self.reason = f"work budget {self.options.work_budget} exhausted"
        elif self.deadline is not None and time.perf_counter() > self.deadline:
            self.truncated = True
            self.reason = f"time budget {self.options.time_budget}s exhausted"
        return not self.truncated


# --- shared machinery ------------------------------------------------------

def _leaf_group(g: TrieLikeGraph) -> LayerGroup:
    grp = LayerGroup(END, 1, None)
    for leaf in g.leaves:
        occ = Occurrence(leaf, grp)
        occ.allowed = g.nodes[leaf].leaf_conj_ids
        grp.members[leaf] = occ
    return grp


def _expand(g: TrieLikeGraph, source: LayerGroup) -> list[LayerGroup]:
    """Parents of every member of ``source``, grouped by label.

    Links whose span ids miss the child's allowed set are dropped: they
    cannot carry any conjunction.
    """
    by_label: dict = {}
    for occ in source.members.values():
        for parent, ids in g.in_edges[occ.node]:
            if ids is not None and occ.allowed.isdisjoint(ids):
                continue
            label = g.nodes[parent].label
            grp = by_label.get(label)
            if grp is None:
                grp = by_label[label] = LayerGroup(label, source.level + 1, source)
            p = grp.members.get(parent)
            if p is None:
                p = grp.members[parent] = Occurrence(parent, grp)
            p.links.append((occ, ids))
    groups = list(by_label.values())
    for grp in groups:
        for occ in grp.members.values():
            occ.recompute()
    return groups


def _candidate(g: TrieLikeGraph, occ: Occurrence, allowed: frozenset[int] | None = None) -> Candidate:
    allowed = occ.allowed if allowed is None else allowed
    below = occ.group.source.chain_vars if occ.group.source is not None else frozenset()
    true_vars = g.prefix | g.tree_vars(occ.node) | below
    return Candidate(allowed, true_vars, g.nodes[occ.node].name, occ.group.level)


def _seed(g: TrieLikeGraph, ctx: _Context) -> None:
    # each shared main path already satisfies its whole leaf set
    for leaf in g.leaves:
        ids = g.nodes[leaf].leaf_conj_ids
        if ids:
            ctx.offer(Candidate(ids, g.prefix | g.tree_vars(leaf), g.nodes[leaf].name, 1))


# --- basic layered search ----------------------------------------------------

def build_layered(g: TrieLikeGraph, work_budget: int | None = None) -> LayeredGraph:
    """Stack-driven layering: only groups of size > 1 are expanded."""
    levels: dict[int, list[LayerGroup]] = defaultdict(list)
    truncated = False
    work = 0
    if g.leaves:
        first = _leaf_group(g)
        levels[1].append(first)
        stack = [first] if len(first) > 1 else []
        while stack:
            grp = stack.pop()
            for new in _expand(g, grp):
                levels[new.level].append(new)
                work += len(new) + sum(len(o.links) for o in new.members.values())
                if len(new) > 1:
                    stack.append(new)
            if work_budget is not None and work > work_budget:
                truncated = True
                break
    depth = max(levels) if levels else 0
    return LayeredGraph(g, [levels[k] for k in range(1, depth + 1)], truncated)


def rooted_candidates(layered: LayeredGraph, s_roots_only: bool = True) -> list[Candidate]:
    """One candidate per rooted subgraph (per occurrence whose group is a singleton)."""
    g = layered.graph
    out = []
    for level in layered.levels:
        for grp in level:
            if s_roots_only and len(grp) != 1:
                continue
            for occ in grp.members.values():
                if occ.allowed:
                    out.append(_candidate(g, occ))
    return out


def find_subset(layered: LayeredGraph) -> Candidate | None:
    best = None
    for cand in rooted_candidates(layered):
        if best is None or len(cand.conj_ids) > len(best.conj_ids):
            best = cand
    return best


def search_basic(g: TrieLikeGraph, options: SearchOptions | None = None) -> SolveResult:
    options = options or SearchOptions(algorithm="basic")
    ctx = _Context(g.num_vars, options)
    ctx.found.append([])
    start = time.perf_counter()
    _seed(g, ctx)
    layered = build_layered(g, options.work_budget)
    for cand in rooted_candidates(layered):
        ctx.offer(cand)
    ctx.stats.levels = len(layered.levels)
    ctx.stats.occurrences = sum(1 for _ in layered.occurrences())
    if layered.truncated:
        ctx.truncated, ctx.reason = True, f"work budget {options.work_budget} exhausted"
    return _finish(g, ctx, start, ctx.found.pop())


# --- reachable sets, upper boundary, recursive subgraph ---------------------

def compute_rs(g: TrieLikeGraph, v: int, u: int) -> list[ReachableSet]:
    """Same-labelled strict descendants of ``v`` reachable from anchor ``u``
    through one span (for ``u == v`` also through a tree edge); sets of
    fewer than two nodes are dropped."""
    pre, post = g.pre, g.post
    lo, hi = pre[v], post[v]
    by_label: dict = {}
    for w, ids in g.out_edges[u]:
        if ids is None and u != v:
            continue
        if pre[w] > lo and post[w] < hi:
            by_label.setdefault(g.nodes[w].label, set()).add(w)
    return [
        ReachableSet(u, label, frozenset(members))
        for label, members in by_label.items() if len(members) >= 2
    ]


def compute_all_rs(g: TrieLikeGraph, v: int) -> list[ReachableSet]:
    return [rs for u in g.tree_path(v) for rs in compute_rs(g, v, u)]


def compute_upbound(rs_sets: Iterable[ReachableSet], g: TrieLikeGraph, v: int | None = None) -> UpperBoundary:
    """Reachable-set members with no other member above them in the trie."""
    pre, post = g.pre, g.post
    top: list[int] = []
    for w in sorted({w for rs in rs_sets for w in rs.members}, key=pre.__getitem__):
        # subtrees are contiguous in preorder: only the latest top can contain w
        if not top or post[w] > post[top[-1]]:
            top.append(w)
    return UpperBoundary(frozenset(top))


def _entry_ids(g: TrieLikeGraph, anchor: int, w: int) -> frozenset[int] | None | bool:
    if g.nodes[w].parent == anchor:
        return None
    return g.spans.get((anchor, w), False)


def admitted_conjunctions(g: TrieLikeGraph, ub: UpperBoundary, anchor: int) -> list[tuple[int, int]]:
    """``(boundary node, conj id)`` pairs that enter the recursive graph
    rooted at ``anchor``, boundary nodes in preorder, ids ascending."""
    out = []
    for w in sorted(ub.nodes, key=lambda x: g.nodes[x].pre):
        ids = _entry_ids(g, anchor, w)
        if ids is False:
            continue
        below = g.conj_below[w]
        out.extend((w, cid) for cid in sorted(below if ids is None else below & ids))
    return out


def build_recursive_graph(g: TrieLikeGraph, v: int, ub: UpperBoundary,
                          anchor: int | None = None) -> TrieLikeGraph | None:
    """Trie-like graph over the subgraphs hanging from the upper boundary.

    ``anchor`` (default ``v``) on the tree path ``root -> v`` becomes the
    new root; a conjunction below boundary node ``w`` is admitted only when
    the anchor's edge into ``w`` is a tree edge or a span carrying it.
    Equal label suffixes merge, as in any trie.  Returns ``None`` when
    nothing is admitted.
    """
    anchor = v if anchor is None else anchor
    return _assemble_admitted(g, anchor, admitted_conjunctions(g, ub, anchor))


def _assemble_admitted(g: TrieLikeGraph, anchor: int, admitted: list[tuple[int, int]]) -> TrieLikeGraph | None:
    if not admitted:
        return None
    return _assemble_entries(g, anchor, _entries(g, anchor, admitted))


def _entries(g: TrieLikeGraph, anchor: int, admitted: list[tuple[int, int]]) -> list:
    entries = []
    for w, cid in admitted:
        path = g.conj_paths[cid]
        suffix = path[path.index(w):]
        pos = {anchor: 0}
        pos.update((x, t + 1) for t, x in enumerate(suffix))
        spans = [
            (pos[a], pos[b]) for a, b in g.conj_spans[cid]
            if a in pos and b in pos and (a, b) != (anchor, w)
        ]
        entries.append((
            cid,
            [g.nodes[x].label for x in suffix],
            [g.nodes[x].origin or (str(x),) for x in suffix],
            spans,
        ))
    return entries


def _assemble_entries(g: TrieLikeGraph, anchor: int, entries: list) -> TrieLikeGraph:
    root = g.nodes[anchor]
    prefix = g.prefix | (g.tree_vars(anchor) - {root.label})
    return assemble(root.label, root.origin or (str(anchor),), entries, g.num_vars, prefix)


# --- improved search ---------------------------------------------------------

def _classify(g: TrieLikeGraph, appearances: Sequence[Occurrence]) -> tuple[bool, bool, set[int]]:
    """(different-path pair?, same-path pair?, lower same-path children)."""
    pre, post = g.pre, g.post
    kids = [[c.node for c, _ in occ.links] for occ in appearances]
    diff = same = False
    lower: set[int] = set()
    for i in range(len(kids)):
        for j in range(i + 1, len(kids)):
            for a in kids[i]:
                pa, qa = pre[a], post[a]
                for b in kids[j]:
                    if pa < pre[b] and qa > post[b]:
                        same = True
                        lower.add(b)
                    elif pre[b] < pa and post[b] > qa:
                        same = True
                        lower.add(a)
                    else:
                        diff = True
    return diff, same, lower


def _reconnect_ok(g: TrieLikeGraph, v: int, child: Occurrence) -> bool:
    """The lower child's group holds another node with a parent other than
    ``v`` carrying ``v``'s label."""
    label = g.nodes[v].label
    for node in child.group.members:
        if node == child.node:
            continue
        for parent, _ in g.in_edges[node]:
            if parent != v and g.nodes[parent].label == label:
                return True
    return False


def _names(g: TrieLikeGraph, nodes: Iterable[int]) -> list[str]:
    return [g.nodes[x].name for x in sorted(nodes, key=lambda x: g.nodes[x].pre)]


def _case1(g: TrieLikeGraph, v: int, ctx: _Context, depth: int, done: set, event: dict | None) -> None:
    rs_sets = compute_all_rs(g, v)
    ub = compute_upbound(rs_sets, g, v)
    if event is not None:
        event["rs"] = [
            {"anchor": g.nodes[rs.anchor].name, "label": g.nodes[next(iter(rs.members))].label_text(),
             "members": _names(g, rs.members)}
            for rs in rs_sets
        ]
        event["upbound"] = _names(g, ub.nodes)
        event["calls"] = []
    if len(ub) < 2:
        return
    anchors = list(dict.fromkeys(rs.anchor for rs in rs_sets))
    for anchor in anchors:
        if ctx.truncated:
            break
        key = (anchor, ub.nodes)
        if key in done:
            continue
        done.add(key)
        admitted = admitted_conjunctions(g, ub, anchor)
        if not admitted:
            continue
        ids = sorted({cid for _, cid in admitted})
        call = {"anchor": g.nodes[anchor].name, "admitted": ids}
        entries = _entries(g, anchor, admitted)
        key = (g.nodes[anchor].label, tuple((c, tuple(l), tuple(sp)) for c, l, _, sp in entries))
        if ctx.options.memo and key in ctx.searched:
            call["pruned"] = "repeat"
        elif ctx.bound(ids) <= ctx.alpha:
            ctx.stats.pruned += 1
            call["pruned"] = True
        elif depth + 1 > ctx.depth_cap:
            ctx.truncated = True
            ctx.reason = ctx.reason or f"recursion depth cap {ctx.depth_cap} reached"
            call["pruned"] = "depth cap"
        else:
            ctx.stats.recursive_calls += 1
            before = ctx.best
            ctx.searched.add(key)
            found = _search(_assemble_entries(g, anchor, entries), ctx, depth + 1)
            call["pruned"] = False
            call["result"] = sorted(ctx.best.conj_ids) if ctx.best is not before else None
            if found is not None:
                call["candidates"] = sorted({tuple(sorted(c.conj_ids)) for c in found})
        if event is not None:
            event["calls"].append(call)


def _search(g: TrieLikeGraph, ctx: _Context, depth: int) -> list[Candidate] | None:
    ctx.stats.max_depth = max(ctx.stats.max_depth, depth)
    collect = ctx.options.collect_candidates
    if collect:
        ctx.found.append([])
    _seed(g, ctx)
    done: set = set()
    levels = 0
    if g.leaves:
        level = [_leaf_group(g)]
        levels = 1
        frontier = [grp for grp in level if len(grp) > 1]
        while frontier and not ctx.truncated:
            new_groups: list[LayerGroup] = []
            for grp in frontier:
                new_groups.extend(_expand(g, grp))
            levels += 1
            created = sum(len(grp) + sum(len(o.links) for o in grp.members.values()) for grp in new_groups)
            ctx.stats.occurrences += sum(len(grp) for grp in new_groups)
            if not ctx.spend(created):
                break
            seen: dict[int, list[Occurrence]] = defaultdict(list)
            for grp in new_groups:
                for occ in grp.members.values():
                    seen[occ.node].append(occ)
            for node, occs in seen.items():
                if len(occs) == 1:
                    ctx.offer(_candidate(g, occs[0]))
            for node, occs in seen.items():
                if len(occs) > 1 and ctx.spend(len(occs)):
                    _repeated(g, node, occs, ctx, depth, done)
            frontier = [grp for grp in new_groups if len(grp) > 1]
    if depth == 0:
        ctx.stats.levels = levels
    if not collect:
        return None
    mine = ctx.found.pop()
    if ctx.found:
        ctx.found[-1].extend(mine)   # parents see everything found below them
    return mine


def _repeated(g: TrieLikeGraph, v: int, occs: list[Occurrence], ctx: _Context, depth: int, done: set) -> None:
    diff, same, lower = _classify(g, occs)
    case = 3 if diff and same else (1 if diff else 2)
    setattr(ctx.stats, f"case{case}", getattr(ctx.stats, f"case{case}") + 1)
    event = None
    if ctx.options.trace:
        event = {"depth": depth, "graph_root": g.nodes[g.root].name, "node": g.nodes[v].name,
                 "level": occs[0].group.level, "case": case,
                 "appearances": [[g.nodes[c.node].name for c, _ in o.links] for o in occs]}
    if same and ctx.options.case2_check:
        for occ in occs:
            kept = [(c, ids) for c, ids in occ.links if c.node not in lower or _reconnect_ok(g, v, c)]
            if len(kept) != len(occ.links):
                occ.links = kept
                occ.recompute()
    # findSubset on every appearance before they collapse into one
    for occ in occs:
        if occ.allowed:
            ctx.offer(_candidate(g, occ))
    if diff:
        _case1(g, v, ctx, depth, done, event)
    survivor, *rest = occs
    for occ in rest:
        del occ.group.members[v]
    if not survivor.allowed:
        del survivor.group.members[v]
    if event is not None:
        event["survivor_chain"] = sorted(survivor.group.chain_vars)
        ctx.trace.append(event)


def search_improved(g: TrieLikeGraph, best_so_far: int = 0,
                    options: SearchOptions | None = None,
                    conflicts: Mapping[int, frozenset[int]] | None = None) -> SolveResult:
    """Level-by-level search with repeated-node merging and recursion.

    ``best_so_far`` seeds the pruning bound: recursive calls admitting no
    more conjunctions than the incumbent are skipped.
    """
    options = options or SearchOptions()
    ctx = _Context(g.num_vars, options, conflicts)
    start = time.perf_counter()
    ctx.floor = best_so_far
    found = _search(g, ctx, 0)
    return _finish(g, ctx, start, found)


def _finish(g: TrieLikeGraph, ctx: _Context, start: float, found: list[Candidate] | None = None) -> SolveResult:
    ctx.stats.trie_nodes = len(g.nodes)
    ctx.stats.span_edges = len(g.spans)
    ctx.stats.elapsed = time.perf_counter() - start
    best = ctx.best
    if best is None:
        ids, assignment = frozenset(), Assignment.all_false(g.num_vars)
    else:
        ids, assignment = best.conj_ids, best.assignment(g.num_vars)
    cands = tuple(dict.fromkeys(c.conj_ids for c in found)) if found else ()
    return SolveResult(len(ids), ids, assignment, ctx.stats, ctx.truncated, ctx.reason, tuple(ctx.trace), cands)


def search(g: TrieLikeGraph, options: SearchOptions | None = None,
           conflicts: Mapping[int, frozenset[int]] | None = None) -> SolveResult:
    options = options or SearchOptions()
    if options.algorithm == "basic":
        return search_basic(g, options)
    if options.algorithm == "improved":
        return search_improved(g, 0, options, conflicts)
    raise ValueError(f"unknown algorithm {options.algorithm!r}")


def layered_to_dot(layered: LayeredGraph, title: str = "G'") -> str:
    """One cluster per level; occurrences named ``<node>@<level>.<group>``."""
    g = layered.graph
    ids: dict[int, str] = {}
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for k, level in enumerate(layered.levels, 1):
        lines.append(f'  subgraph "cluster_L{k}" {{ label="level {k}"; rank=same;')
        for j, grp in enumerate(level):
            for occ in grp.members.values():
                name = ids[id(occ)] = f"{g.nodes[occ.node].name}@{k}.{j}"
                shape = "doublecircle" if len(grp) == 1 else "ellipse"
                lines.append(f'    "{name}" [label="{g.nodes[occ.node].name}: {g.nodes[occ.node].label_text()}", shape={shape}];')
        lines.append("  }")
    for occ in layered.occurrences():
        for child, span in occ.links:
            if id(child) not in ids:
                continue
            style = "" if span is None else f' [style=dashed, label="{",".join(map(str, sorted(span)))}"]'
            lines.append(f'  "{ids[id(child)]}" -> "{ids[id(occ)]}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- path-level helpers --------------------------------------------------------

def assignment_condition(g: TrieLikeGraph, path: Sequence[int], conj_id: int) -> bool:
    """Every edge of ``path`` (a node list) is a tree edge or a span carrying ``conj_id``."""
    for a, b in zip(path, path[1:]):
        if g.nodes[b].parent == a:
            continue
        ids = g.spans.get((a, b))
        if ids is None or conj_id not in ids:
            return False
    return True


def extract_assignment(g: TrieLikeGraph, v: int, path_to_leaf: Sequence[int]) -> Assignment:
    """Labels on the tree path root -> ``v`` and on ``path_to_leaf`` are true."""
    true_vars = set(g.prefix | g.tree_vars(v))
    true_vars.update(g.nodes[x].label for x in path_to_leaf if isinstance(g.nodes[x].label, int))
    return Assignment.from_true(true_vars, g.num_vars)


def conflict_map(conjunctions: Mapping[int, tuple[frozenset[int], frozenset[int]]]) -> dict[int, frozenset[int]]:
    """Pairs of conjunctions that share a variable with opposite signs."""
    out: dict[int, set[int]] = {c: set() for c in conjunctions}
    by_pos: dict[int, list[int]] = defaultdict(list)
    for c, (pos, _) in conjunctions.items():
        for v in pos:
            by_pos[v].append(c)
    for c, (_, neg) in conjunctions.items():
        for v in neg:
            for other in by_pos.get(v, ()):
                out[c].add(other)
                out[other].add(c)
    return {c: frozenset(x) for c, x in out.items()}


def candidate_sound(cand: Candidate, conjunctions: dict[int, tuple[frozenset[int], frozenset[int]]]) -> bool:
    """Direct check: every id's positive variables true, negative ones false."""
    for cid in cand.conj_ids:
        pos, neg = conjunctions[cid]
        if not pos <= cand.true_vars or neg & cand.true_vars:
            return False
    return True
