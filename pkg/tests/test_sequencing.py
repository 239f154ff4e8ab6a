import pytest

from twomaxsat.formula import Conjunction, DnfFormula, FormulaError, Literal
from twomaxsat.sequencing import (
    GlobalOrdering,
    build_ordering,
    build_sequence,
    build_sequences,
    compute_frequencies,
)

from conftest import WORKED_ORDER

SEQUENCE_ROWS = [
    "#.(c2,*).(c3,*).c1.c4.(c5,*).(c6,*).$",
    "#.c2.(c3,*).(c1,*).(c5,*).(c6,*).$",
    "#.c2.(c3,*).(c1,*).(c4,*).c5.(c6,*).$",
    "#.(c2,*).(c1,*).(c4,*).(c6,*).$",
    "#.(c2,*).c3.(c1,*).(c4,*).(c5,*).c6.$",
    "#.(c2,*).(c3,*).(c4,*).(c5,*).$",
]


def test_frequency_counts(small_dnf):
    t = compute_frequencies(small_dnf)
    assert dict(t.count) == {1: 5, 2: 6, 3: 5, 4: 5, 5: 5, 6: 5}
    assert t.total == 6
    assert t.fraction(2) == "6/6"


def test_absence_counts_negation_does_not():
    t = compute_frequencies(DnfFormula.from_lists(2, [[1]]))
    assert dict(t.count) == {1: 1, 2: 1}
    assert dict(compute_frequencies(DnfFormula.from_lists(1, [[-1]])).count) == {1: 0}


def test_by_index_ordering(small_dnf):
    assert build_ordering(compute_frequencies(small_dnf)).order == (2, 1, 3, 4, 5, 6)


def test_explicit_ordering(small_dnf):
    o = build_ordering(compute_frequencies(small_dnf), WORKED_ORDER)
    assert o.order == tuple(WORKED_ORDER)
    assert o.rank(1) == 3


def test_equal_counts_identity():
    d = DnfFormula.from_lists(3, [[1, 2, 3]])
    assert build_ordering(compute_frequencies(d)).order == (1, 2, 3)


@pytest.mark.parametrize("bad", [[1, 2, 3, 4, 5], [1, 1, 2, 3, 4, 5], "by-frequency"])
def test_bad_orderings(small_dnf, bad):
    with pytest.raises(FormulaError):
        build_ordering(compute_frequencies(small_dnf), bad)


def test_sequence_rows(small_dnf):
    o = GlobalOrdering(WORKED_ORDER)
    assert [str(s) for s in build_sequences(small_dnf, o)] == SEQUENCE_ROWS


def test_all_mandatory():
    c = Conjunction(1, (Literal(1), Literal(2), Literal(3)))
    s = build_sequence(c, GlobalOrdering((1, 2, 3)))
    assert str(s) == "#.c1.c2.c3.$" and s.num_optional == 0


def test_negated_variables_removed(small_dnf):
    s = build_sequence(small_dnf[2], GlobalOrdering(WORKED_ORDER))
    assert 4 not in s.variables and s.removed == {4}


def test_contradictory_skipped():
    d = DnfFormula.from_lists(2, [[1, -1], [2]])
    seqs = build_sequences(d, GlobalOrdering((1, 2)))
    assert [s.conj_id for s in seqs] == [2]
    assert compute_frequencies(d).total == 1
    with pytest.raises(FormulaError):
        build_sequence(d[1], GlobalOrdering((1, 2)))


def test_ordering_length_mismatch(small_dnf):
    with pytest.raises(FormulaError):
        build_sequence(small_dnf[1], GlobalOrdering((1, 2, 3)), 6)
