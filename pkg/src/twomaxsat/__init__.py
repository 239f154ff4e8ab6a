"""2-MAXSAT through DNF reduction and trie-like graph search, with an
exhaustive oracle and a differential-testing harness."""

from .formula import (
    Assignment,
    Clause,
    CnfFormula,
    Conjunction,
    DnfFormula,
    FormulaError,
    Literal,
    count_satisfied_clauses,
    count_satisfied_conjunctions,
    parse_cnf,
    parse_dnf,
    to_dimacs,
)
from .oracle import DiffReport, GenParams, gen_instance, oracle_dnf_max, oracle_maxsat, run_diff
from .pstar import PStarGraph, build_p_graph, close_spans, enumerate_paths, pstar_graph
from .reduction import ReductionMap, lift_assignment, lift_subset, reduce
from .search import (
    SearchOptions,
    SolveResult,
    SoundnessError,
    build_layered,
    compute_rs,
    compute_upbound,
    find_subset,
    search_basic,
    search_improved,
)
from .sequencing import build_ordering, build_sequence, build_sequences, compute_frequencies
from .solver import MaxSatResult, SolveOptions, build_pipeline, solve, solve_dnf
from .triegraph import TrieLikeGraph, assign_pre_post, build_trie, build_trie_like_graph, is_ancestor, overlay_spans

__version__ = "0.1.0"
