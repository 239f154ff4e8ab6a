"""
A small instance from clauses to answer
=======================================

Three 2-clauses over three variables, taken through every stage of the
pipeline: reduction to conjunctions, variable sequences, p*-graphs, the
trie-like graph and finally the search.
"""

from twomaxsat import parse_cnf, reduce, solve
from twomaxsat.pstar import enumerate_paths
from twomaxsat.search import compute_all_rs, compute_upbound
from twomaxsat.sequencing import compute_frequencies
from twomaxsat.solver import SolveOptions, build_pipeline

f = parse_cnf("p cnf 3 3\n1 2 0\n2 -3 0\n3 -1 0\n")

# each clause becomes a pair of conjunctions sharing a fresh variable
d, rmap = reduce(f)
for c in d.conjunctions:
    print(f"D{c.id}: {c}")

# order the variables the way the worked tables do
order = [2, 3, 1, 4, 5, 6]
pipe = build_pipeline(d, order)
print("\nfrequencies:", {f"c{v}": k for v, k in compute_frequencies(d).count.items()})
for s in pipe.sequences:
    print(s)

# every #->$ path of a p*-graph is one satisfying assignment
g1 = pipe.pgraphs[0]
print(f"\nD1 has {len(enumerate_paths(g1))} satisfying assignments:")
for a in enumerate_paths(g1):
    print("  ", a.bits())

g = pipe.graph
print(f"\ntrie-like graph: {len(g)} nodes, {len(g.spans)} span edges")
for (u, v), ids in sorted(g.spans.items()):
    print(f"  {g.name(u)} -> {g.name(v)}  {sorted(ids)}")

# reachable sets and their upper boundary below v2
ub = compute_upbound(compute_all_rs(g, 2), g, 2)
print("\nupper boundary under v2:", [g.name(x) for x in sorted(ub.nodes)])

r = solve(f, SolveOptions(order="by-index"))
print(f"\nbest: {r.best_size} of {len(f.clauses)} clauses, assignment {r.assignment.bits()}")
