"""Trie over the main paths of all p*-graphs, with their spans overlaid.

Node ids are renumbered into preorder by :func:`assign_pre_post`, so node
``k`` prints as ``v<k>`` and ``pre == k + 1``.  Tree edges carry no
conjunction ids; each span edge carries the set of conjunctions it
belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .pstar import END, ROOT, PStarGraph
from .sequencing import VariableSequence


class GraphConsistencyError(RuntimeError):
    """A p*-graph whose main path is missing from the trie."""


@dataclass(frozen=True)
class TrieNode:
    id: int
    label: int | str
    parent: int | None
    children: tuple[int, ...] = ()
    pre: int = 0
    post: int = 0
    leaf_conj_ids: frozenset[int] = frozenset()
    origin: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        if self.origin:
            return "v" + "-".join(self.origin)
        return f"v{self.id}"

    @property
    def is_leaf(self) -> bool:
        return self.label == END

    def label_text(self) -> str:
        return self.label if isinstance(self.label, str) else f"c{self.label}"


@dataclass(frozen=True)
class SpanEdge:
    source: int
    target: int
    conj_ids: frozenset[int]


class TrieLikeGraph:
    """Immutable trie-like graph.

    ``prefix`` holds variables that are already true above ``root``; it is
    empty for a top-level graph and non-empty for the subgraphs built
    during recursive search.
    """

    def __init__(
        self,
        nodes: Sequence[TrieNode],
        spans: Mapping[tuple[int, int], frozenset[int]],
        conj_paths: Mapping[int, tuple[int, ...]],
        num_vars: int,
        root: int = 0,
        prefix: frozenset[int] = frozenset(),
    ):
        self.nodes = tuple(nodes)
        self.spans = MappingProxyType({k: frozenset(v) for k, v in spans.items()})
        self.conj_paths = MappingProxyType(dict(conj_paths))
        self.num_vars = num_vars
        self.root = root
        self.prefix = frozenset(prefix)

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, node: int) -> TrieNode:
        return self.nodes[node]

    def label(self, node: int) -> int | str:
        return self.nodes[node].label

    def name(self, node: int) -> str:
        return self.nodes[node].name

    @cached_property
    def _by_name(self) -> dict[str, int]:
        return {n.name: n.id for n in self.nodes}

    def node(self, name: str) -> int:
        return self._by_name[name]

    def span_edges(self) -> Iterator[SpanEdge]:
        for (a, b), ids in sorted(self.spans.items()):
            yield SpanEdge(a, b, ids)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(n.id for n in self.nodes if n.is_leaf)

    @cached_property
    def conj_ids(self) -> frozenset[int]:
        return frozenset(self.conj_paths)

    @cached_property
    def in_edges(self) -> tuple[tuple[tuple[int, frozenset[int] | None], ...], ...]:
        """Per node: ``(source, ids)`` with ``ids is None`` for the tree edge."""
        acc: list[list] = [[] for _ in self.nodes]
        for n in self.nodes:
            if n.parent is not None:
                acc[n.id].append((n.parent, None))
        for (a, b), ids in sorted(self.spans.items()):
            acc[b].append((a, ids))
        return tuple(tuple(x) for x in acc)

    @cached_property
    def out_edges(self) -> tuple[tuple[tuple[int, frozenset[int] | None], ...], ...]:
        acc: list[list] = [[(c, None) for c in n.children] for n in self.nodes]
        for (a, b), ids in sorted(self.spans.items()):
            acc[a].append((b, ids))
        return tuple(tuple(x) for x in acc)

    @cached_property
    def conj_spans(self) -> Mapping[int, tuple[tuple[int, int], ...]]:
        acc: dict[int, list] = {c: [] for c in self.conj_paths}
        for key, ids in sorted(self.spans.items()):
            for c in ids:
                acc[c].append(key)
        return {c: tuple(v) for c, v in acc.items()}

    @cached_property
    def pre(self) -> tuple[int, ...]:
        return tuple(n.pre for n in self.nodes)

    @cached_property
    def post(self) -> tuple[int, ...]:
        return tuple(n.post for n in self.nodes)

    @cached_property
    def conj_below(self) -> tuple[frozenset[int], ...]:
        """Per node: conjunctions whose main path passes through it."""
        acc: list[set[int]] = [set() for _ in self.nodes]
        for c, path in self.conj_paths.items():
            for x in path:
                acc[x].add(c)
        return tuple(frozenset(x) for x in acc)

    @cached_property
    def _tree_vars(self) -> tuple[frozenset[int], ...]:
        out: list[frozenset[int] | None] = [None] * len(self.nodes)
        for n in self.nodes:  # preorder: parents come first
            base = out[n.parent] if n.parent is not None else frozenset()
            out[n.id] = base | {n.label} if isinstance(n.label, int) else base
        return tuple(out)

    def tree_vars(self, node: int) -> frozenset[int]:
        """Variables labelling the tree path root -> node (inclusive)."""
        return self._tree_vars[node]

    def tree_path(self, node: int) -> list[int]:
        path = [node]
        while self.nodes[path[-1]].parent is not None:
            path.append(self.nodes[path[-1]].parent)
        return path[::-1]

    def depth(self, node: int) -> int:
        return len(self.tree_path(node)) - 1

    def is_ancestor(self, u: int, v: int) -> bool:
        return is_ancestor(self, u, v)


# --- construction ---------------------------------------------------------

@dataclass
class _Draft:
    label: int | str
    parent: int | None
    children: dict = field(default_factory=dict)
    leaf_ids: set = field(default_factory=set)
    origin: list = field(default_factory=list)


def _insert(drafts: list[_Draft], labels: Sequence, origins: Sequence[Sequence[str]] | None = None) -> list[int]:
    """Insert a label string below ``drafts[0]``; returns node ids along it."""
    path = [0]
    for pos, label in enumerate(labels):
        here = drafts[path[-1]]
        nxt = here.children.get(label)
        if nxt is None:
            nxt = len(drafts)
            drafts.append(_Draft(label, path[-1]))
            here.children[label] = nxt
        if origins is not None:
            for o in origins[pos]:
                if o not in drafts[nxt].origin:
                    drafts[nxt].origin.append(o)
        path.append(nxt)
    return path


def _freeze(drafts: list[_Draft]) -> list[TrieNode]:
    return [
        TrieNode(i, d.label, d.parent, tuple(d.children.values()),
                 leaf_conj_ids=frozenset(d.leaf_ids), origin=tuple(d.origin))
        for i, d in enumerate(drafts)
    ]


def build_trie(seqs: Iterable[VariableSequence], num_vars: int | None = None) -> TrieLikeGraph:
    """Plain trie over the ``#...$`` main paths; no spans, no pre/post yet.

    Children keep first-insertion order.  Sequences with identical main
    paths share one ``$`` leaf.
    """
    seqs = list(seqs)
    if num_vars is None:
        num_vars = seqs[0].num_vars if seqs else 0
    drafts = [_Draft(ROOT, None)]
    paths = {}
    for s in seqs:
        path = _insert(drafts, [*s.variables, END])
        drafts[path[-1]].leaf_ids.add(s.conj_id)
        paths[s.conj_id] = tuple(path)
    return TrieLikeGraph(_freeze(drafts), {}, paths, num_vars)


def _renumber(g: TrieLikeGraph, nodes: list[TrieNode], order: list[int]) -> TrieLikeGraph:
    new = {old: i for i, old in enumerate(order)}
    out = []
    for old in order:
        n = nodes[old]
        out.append(replace(
            n,
            id=new[old],
            parent=None if n.parent is None else new[n.parent],
            children=tuple(new[c] for c in n.children),
            origin=n.origin or (str(new[old]),),
        ))
    spans = {(new[a], new[b]): ids for (a, b), ids in g.spans.items()}
    paths = {c: tuple(new[x] for x in p) for c, p in g.conj_paths.items()}
    return TrieLikeGraph(out, spans, paths, g.num_vars, new[g.root], g.prefix)


def assign_pre_post(g: TrieLikeGraph) -> TrieLikeGraph:
    """Number nodes 1-based in preorder and postorder (child order kept).

    The returned graph is renumbered so that ``node.id == pre - 1``.
    """
    nodes = list(g.nodes)
    pre: dict[int, int] = {}
    post: dict[int, int] = {}
    order = []
    stack = [(g.root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            post[node] = len(post) + 1
            continue
        pre[node] = len(pre) + 1
        order.append(node)
        stack.append((node, True))
        for c in reversed(nodes[node].children):
            stack.append((c, False))
    nodes = [replace(n, pre=pre[n.id], post=post[n.id]) for n in nodes]
    return _renumber(g, nodes, order)


def is_ancestor(g: TrieLikeGraph, u: int, v: int) -> bool:
    """Proper ancestry via the (pre, post) encoding."""
    pre, post = g.pre, g.post
    return pre[u] < pre[v] and post[u] > post[v]


def overlay_spans(g: TrieLikeGraph, pgraphs: Iterable[PStarGraph]) -> TrieLikeGraph:
    """Map every p*-graph span onto the trie; equal endpoints merge their ids."""
    spans: dict[tuple[int, int], set[int]] = {k: set(v) for k, v in g.spans.items()}
    for p in pgraphs:
        path = g.conj_paths.get(p.conj_id)
        if path is None or len(path) != len(p.labels) or any(
            g.nodes[x].label != lab for x, lab in zip(path, p.labels)
        ):
            raise GraphConsistencyError(f"main path of D{p.conj_id} not found in trie")
        for a, b in p.spans:
            spans.setdefault((path[a], path[b]), set()).add(p.conj_id)
    return TrieLikeGraph(g.nodes, spans, g.conj_paths, g.num_vars, g.root, g.prefix)


def build_trie_like_graph(seqs: Sequence[VariableSequence], pgraphs: Sequence[PStarGraph],
                          num_vars: int | None = None) -> TrieLikeGraph:
    return overlay_spans(assign_pre_post(build_trie(seqs, num_vars)), pgraphs)


def assemble(
    root_label: int | str,
    root_origin: Sequence[str],
    entries: Iterable[tuple[int, Sequence, Sequence[Sequence[str]], Iterable[tuple[int, int]]]],
    num_vars: int,
    prefix: frozenset[int],
) -> TrieLikeGraph:
    """Build a trie-like graph from ``(conj_id, labels, origins, spans)``.

    ``labels`` excludes the root and ends with ``$``; span endpoints are
    positions on that string, 0 being the root.  Used for the subgraphs
    constructed during recursive search.
    """
    drafts = [_Draft(root_label, None, origin=list(root_origin))]
    paths = {}
    spans: dict[tuple[int, int], set[int]] = {}
    for cid, labels, origins, cspans in entries:
        path = _insert(drafts, labels, origins)
        drafts[path[-1]].leaf_ids.add(cid)
        paths[cid] = tuple(path)
        for a, b in cspans:
            spans.setdefault((path[a], path[b]), set()).add(cid)
    g = TrieLikeGraph(_freeze(drafts), spans, paths, num_vars, 0, prefix)
    return assign_pre_post(g)


# --- output ---------------------------------------------------------------

def _ids(ids: Iterable[int]) -> str:
    return ",".join(map(str, sorted(ids)))


def trie_to_dot(g: TrieLikeGraph, title: str = "G") -> str:
    lines = [f'digraph "{title}" {{']
    for n in g.nodes:
        extra = f"\\n{{{_ids(n.leaf_conj_ids)}}}" if n.leaf_conj_ids else ""
        shape = "box" if n.is_leaf else "ellipse"
        lines.append(
            f'  "{n.name}" [label="{n.name}: {n.label_text()}\\n({n.pre},{n.post}){extra}", shape={shape}];'
        )
    for n in g.nodes:
        for c in n.children:
            lines.append(f'  "{n.name}" -> "{g.nodes[c].name}";')
    for e in g.span_edges():
        lines.append(
            f'  "{g.nodes[e.source].name}" -> "{g.nodes[e.target].name}" '
            f'[style=dashed, label="{_ids(e.conj_ids)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
