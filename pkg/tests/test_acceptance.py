"""One test per acceptance criterion; each prints a PASS/FAIL line in the
terminal summary.  Run alone with ``pytest tests/test_acceptance.py -v``."""

import random
import time
from itertools import combinations, combinations_with_replacement, product

import pytest

from twomaxsat.bench import DEFAULT_CLAUSES, DEFAULT_VARS, format_table, run_bench
from twomaxsat.formula import CnfFormula, Conjunction, Literal, parse_cnf, parse_dnf
from twomaxsat.oracle import GenParams, oracle_dnf_max, oracle_maxsat, replay_fixture, run_diff
from twomaxsat.pstar import count_paths, enumerate_paths, pstar_graph
from twomaxsat.reduction import reduce
from twomaxsat.search import (
    SearchOptions,
    build_recursive_graph,
    compute_all_rs,
    compute_rs,
    compute_upbound,
    search_improved,
)
from twomaxsat.sequencing import GlobalOrdering, build_sequence, build_sequences, compute_frequencies
from twomaxsat.solver import build_pipeline, solve
from twomaxsat.triegraph import assign_pre_post, build_trie, overlay_spans

from conftest import SMALL_CNF, SMALL_DNF, WORKED_ORDER

SEQUENCE_ROWS = [
    "#.(c2,*).(c3,*).c1.c4.(c5,*).(c6,*).$",
    "#.c2.(c3,*).(c1,*).(c5,*).(c6,*).$",
    "#.c2.(c3,*).(c1,*).(c4,*).c5.(c6,*).$",
    "#.(c2,*).(c1,*).(c4,*).(c6,*).$",
    "#.(c2,*).c3.(c1,*).(c4,*).(c5,*).c6.$",
    "#.(c2,*).(c3,*).(c4,*).(c5,*).$",
]
FREQUENCIES = {1: 5, 2: 6, 3: 5, 4: 5, 5: 5, 6: 5}

DIFF_GRID = [GenParams(m, n, seed=2024, unit_fraction=0.2) for m in range(2, 9) for n in range(1, 11)]
DIFF_PER_POINT = 143  # 70 grid points -> 10,010 instances

pytestmark = pytest.mark.acceptance


def names(g, nodes):
    return {g.name(x) for x in nodes}


def test_1_worked_example(criterion):
    with criterion("1", "worked example solves to 3 with c1=c2=c3=1; reduction matches"):
        start = time.perf_counter()
        f = parse_cnf(SMALL_CNF)
        r = solve(f)
        elapsed = time.perf_counter() - start
        assert r.best_size == 3
        assert r.assignment.true_vars() == {1, 2, 3}
        assert reduce(f)[0].to_lists() == parse_dnf(SMALL_DNF).to_lists()
        assert elapsed < 1.0


def test_2_tables(criterion):
    with criterion("2", "sequence rows and frequency counts"):
        d = parse_dnf(SMALL_DNF)
        assert [str(s) for s in build_sequences(d, GlobalOrdering(WORKED_ORDER))] == SEQUENCE_ROWS
        assert dict(compute_frequencies(d).count) == FREQUENCIES


def test_3_trie_encoding_and_spans(criterion):
    with criterion("3", "pre/post of v2, v9 and span (v0, v2)"):
        d = parse_dnf(SMALL_DNF)
        seqs = build_sequences(d, GlobalOrdering(WORKED_ORDER))
        g = assign_pre_post(build_trie(seqs, d.num_vars))
        by_name = {n.name: n for n in g.nodes}
        assert (by_name["v2"].pre, by_name["v2"].post) == (3, 12)
        assert (by_name["v9"].pre, by_name["v9"].post) == (10, 6)
        g = overlay_spans(g, [pstar_graph(s) for s in seqs])
        assert g.spans[(0, 2)] == {1, 5, 6}


def test_4_pstar_paths(criterion):
    rng = random.Random(4)
    with criterion("4", "200 random conjunctions: path count, satisfaction, distinctness"):
        for _ in range(200):
            m = rng.randint(1, 10)
            k = rng.randint(1, m)
            lits = tuple(Literal(v, rng.random() < 0.5) for v in sorted(rng.sample(range(1, m + 1), k)))
            c = Conjunction(1, lits)
            order = list(range(1, m + 1))
            rng.shuffle(order)
            g = pstar_graph(build_sequence(c, GlobalOrdering(order), m))
            paths = enumerate_paths(g)
            assert len(paths) == count_paths(g) == 2 ** g.num_optional
            assert all(c.satisfied(a) for a in paths)
            assert len(set(paths)) == len(paths)


def all_small_instances(max_vars=3, max_clauses=3):
    for m in range(1, max_vars + 1):
        lits = [v * s for v in range(1, m + 1) for s in (1, -1)]
        clauses = [[l] for l in lits]
        clauses += [[a * s, b * t] for a, b in combinations(range(1, m + 1), 2) for s, t in product((1, -1), repeat=2)]
        for n in range(max_clauses + 1):
            for chosen in combinations_with_replacement(clauses, n):
                yield CnfFormula.from_lists(m, list(chosen))


def test_5_reduction_preserves_optimum(criterion):
    with criterion("5", "exhaustive m<=3, n<=3: CNF optimum equals DNF optimum") as c:
        start = time.perf_counter()
        count = 0
        for f in all_small_instances():
            assert oracle_maxsat(f)[0] == oracle_dnf_max(reduce(f)[0])[0], f.to_lists()
            count += 1
        elapsed = time.perf_counter() - start
        c.note = f"{count} instances, {elapsed:.1f}s"
        assert elapsed < 300


@pytest.fixture(scope="module")
def diff_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    start = time.perf_counter()
    report = run_diff(DIFF_GRID, DIFF_PER_POINT, out_dir=out)
    return report, out, time.perf_counter() - start


def test_6_soundness_gate(criterion, diff_run):
    report, _, elapsed = diff_run
    with criterion("6", ">=10k random instances without a soundness violation") as c:
        c.note = f"{report.instances_run} instances, {elapsed:.0f}s"
        assert report.instances_run >= 10_000
        assert report.soundness_violations == []


def test_7_exactness_measurement(criterion, diff_run):
    report, out, _ = diff_run
    with criterion("7", "diff harness completes; shortfalls shrunk and replayable") as c:
        c.note = (f"agreement {report.agreement_rate:.4%}, {len(report.shortfalls)} shortfalls, "
                  f"{report.truncated} truncated")
        assert report.instances_run >= 10_000
        assert all(s.solver_size < s.oracle_size for s in report.shortfalls)
        assert report.agreements + len(report.shortfalls) == report.instances_run
        for s in report.shortfalls:
            assert s.fixture is not None and s.fixture.startswith(str(out))
            assert replay_fixture(open(s.fixture).read())["reproduced"]
            assert s.minimized_solver_size < s.minimized_oracle_size


@pytest.fixture(scope="module")
def graph():
    return build_pipeline(parse_dnf(SMALL_DNF), WORKED_ORDER).graph


def test_8_rs_and_upbound(criterion, graph):
    g = graph
    with criterion("8", "reachable sets and upper boundaries for v3 and v2"):
        assert names(g, compute_upbound(compute_all_rs(g, 3), g, 3).nodes) == {"v5", "v8"}
        assert names(g, compute_upbound(compute_all_rs(g, 2), g, 2).nodes) == {"v4", "v8", "v11"}
        rs_v2 = {rs.label: names(g, rs.members) for rs in compute_rs(g, 2, 2)}
        assert rs_v2[5] == {"v5", "v8", "v12"}


# The merged leaf under v3 also carries conjunction 3: its closed p*-graph has a
# span from c2 straight to c5, because c1 and c4 are both optional there.
@pytest.mark.xfail(strict=True, reason="leaf set is {2, 3, 5}; see notes on the c2->c5 span of conjunction 3")
def test_9a_v3_recursion_leaf(criterion, graph):
    g = graph
    with criterion("9a", "v3 recursion merges to leaf set {2, 5}") as c:
        sub = build_recursive_graph(g, 3, compute_upbound(compute_all_rs(g, 3), g, 3))
        leaves = [set(sub.nodes[x].leaf_conj_ids) for x in sub.leaves]
        c.note = f"got {leaves}"
        assert leaves == [{2, 5}]


def test_9b_v2_recursion_finds_3_6(criterion, graph):
    g = graph
    with criterion("9b", "v2 recursion reports {3, 6}"):
        sub = build_recursive_graph(g, 2, compute_upbound(compute_all_rs(g, 2), g, 2))
        r = search_improved(sub, 0, SearchOptions(collect_candidates=True, prune="count"))
        assert frozenset({3, 6}) in r.candidates


def test_10_scaling_report(criterion):
    with criterion("10", "bench table over the default grid") as c:
        start = time.perf_counter()
        report = run_bench(DEFAULT_CLAUSES, DEFAULT_VARS, reps=1, seed=0, time_budget=5.0)
        elapsed = time.perf_counter() - start
        print(format_table(report))
        c.note = f"{len(report.rows)} rows, {sum(r.truncated for r in report.rows)} truncated, {elapsed:.0f}s"
        assert len(report.rows) == len(DEFAULT_CLAUSES) * len(DEFAULT_VARS)
        assert elapsed < 600
