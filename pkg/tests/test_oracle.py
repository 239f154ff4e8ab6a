import json

import pytest

from twomaxsat.formula import Assignment, CnfFormula, DnfFormula, parse_cnf
from twomaxsat.oracle import (
    DiffReport,
    GenParams,
    OracleCapExceeded,
    Shortfall,
    fixture_text,
    gen_instance,
    merge_reports,
    oracle_dnf_max,
    oracle_maxsat,
    read_fixture,
    replay_fixture,
    run_diff,
    shrink,
)
from twomaxsat.reduction import reduce

from conftest import brute_max

# generated once, optimum computed with the pure-python brute force in conftest
SEED42_ROWS = [[6, 1], [-2, -6], [-5, 1], [1, -2], [-5, -2], [4, 2], [-1, 2], [-2, 6]]
SEED42_OPT = 8


def test_oracle_eq1(small_cnf):
    best, witness = oracle_maxsat(small_cnf)
    assert best == 3
    # lexicographically smallest maximiser, c1 most significant
    assert witness == Assignment((False, True, False))


def test_oracle_trivia():
    assert oracle_maxsat(CnfFormula.from_lists(1, [[1], [-1]]))[0] == 1
    assert oracle_maxsat(CnfFormula(2, ()))[0] == 0
    assert oracle_dnf_max(DnfFormula.from_lists(1, [[1]]))[0] == 1
    assert oracle_dnf_max(DnfFormula.from_lists(1, [[1], [-1]]))[0] == 1


def test_oracle_eq3(small_dnf):
    assert oracle_dnf_max(small_dnf)[0] == 3


def test_oracle_cap():
    with pytest.raises(OracleCapExceeded):
        oracle_maxsat(CnfFormula.from_lists(25, [[25]]))
    assert oracle_maxsat(CnfFormula.from_lists(3, [[3]]), cap=3)[0] == 1


def test_oracle_matches_brute_force_across_chunks():
    # 18 variables spans several enumeration chunks
    f = gen_instance(GenParams(18, 30, 4))
    assert oracle_maxsat(f)[0] == brute_max(18, f.to_lists(), False)


def test_generator_deterministic():
    f = gen_instance(GenParams(3, 3, 1))
    assert f.to_lists() == [[1, 3], [-2, -3], [1, -2]]
    assert gen_instance(GenParams(3, 3, 1)) == f


def test_generator_units_and_errors():
    f = gen_instance(GenParams(4, 6, 2, 1.0))
    assert all(len(c.literals) == 1 for c in f.clauses)
    with pytest.raises(ValueError):
        gen_instance(GenParams(1, 2, 0))
    with pytest.raises(ValueError):
        gen_instance(GenParams(0, 1, 0))
    f = gen_instance(GenParams(5, 10, 3, 0.3))
    assert sum(len(c.literals) == 1 for c in f.clauses) == 3
    assert all(len({l.variable for l in c.literals}) == len(c.literals) for c in f.clauses)


def test_seed42_fixture():
    f = gen_instance(GenParams(6, 8, 42))
    assert f.to_lists() == SEED42_ROWS
    assert oracle_maxsat(f)[0] == SEED42_OPT


def test_reduction_keeps_optimum_on_random_instances():
    for seed in range(50):
        f = gen_instance(GenParams(4, 5, seed, 0.2))
        assert oracle_maxsat(f)[0] == oracle_dnf_max(reduce(f)[0])[0]


def test_diff_eq1_fixture(small_cnf):
    report = run_diff([], 0, instances=[small_cnf])
    assert report.instances_run == 1 and report.agreements == 1


def test_diff_count_zero():
    report = run_diff(GenParams(5, 6, 7), 0)
    assert report.instances_run == 0 and report.shortfalls == []
    json.loads(report.to_json())


def test_diff_partitions():
    report = run_diff(GenParams(4, 5, 7, 0.2), 30)
    assert report.agreements + len(report.shortfalls) == report.instances_run == 30
    assert report.soundness_violations == []


def test_shrink_preserves_property():
    # shrink towards "at least two clauses mention variable 1", a stand-in property
    f = CnfFormula.from_lists(4, [[1, 2], [3, 4], [-1, 3], [2, -4], [1, -3]])
    pred = lambda g: sum(1 for c in g.clauses if any(l.variable == 1 for l in c.literals)) >= 2  # noqa: E731
    small = shrink(f, pred)
    assert pred(small)
    assert len(small.clauses) == 2


def test_fixture_roundtrip_and_replay(small_cnf):
    text = fixture_text(small_cnf, 3, 3)
    f, s, o = read_fixture(text)
    assert f == small_cnf and (s, o) == (3, 3)
    out = replay_fixture(text)
    assert out["reproduced"]


def test_merge_is_order_independent():
    a = DiffReport(2, 1, [Shortfall("b", 1, 2, "b", 1, 2)], seed=3)
    b = DiffReport(3, 2, [Shortfall("a", 1, 2, "a", 1, 2)], seed=1)
    assert merge_reports([a, b]).to_dict() == merge_reports([b, a]).to_dict()
    assert merge_reports([a, b]).instances_run == 5
