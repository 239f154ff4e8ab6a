"""
Checking the search against brute force
=======================================

Generate seeded random 2-CNF instances, solve each with the graph search and
with exhaustive enumeration, and tally how often they agree.  Any shortfall
is shrunk to a small DIMACS file that can be replayed later.
"""

import sys
import tempfile

from twomaxsat.oracle import GenParams, run_diff

count = int(sys.argv[1]) if len(sys.argv) > 1 else 25
grid = [GenParams(m, n, seed=1, unit_fraction=0.2) for m in (3, 5, 7) for n in (4, 8)]

with tempfile.TemporaryDirectory() as out:
    report = run_diff(grid, count, out_dir=out)

print(f"{report.instances_run} instances, {report.agreements} agree "
      f"({report.agreement_rate:.2%}), {report.truncated} hit a budget")
for s in report.shortfalls:
    print(f"shortfall {s.solver_size} < {s.oracle_size}; shrunk to:")
    print(s.minimized)
