"""
How solve time grows
====================

Time the solver over a small grid of instance sizes and fit
log(time) ~ a*log(n) + b*log(m).  Points that run out of time are reported
but left out of the fit.
"""

from twomaxsat.bench import format_table, run_bench

report = run_bench(clauses=(4, 8, 12), num_vars=(4, 6, 8), reps=3, seed=0, time_budget=2.0)
print(format_table(report))

# the structure columns explain the timing: span edges grow much faster than nodes
big = max(report.rows, key=lambda r: r.span_edges)
print(f"\nlargest graph: n={big.clauses}, m={big.vars}, "
      f"{big.trie_nodes} nodes, {big.span_edges} span edges")
