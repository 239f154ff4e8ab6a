"""Command-line front end.

Exit codes: 0 ok, 1 input/parse error, 2 soundness violation, 3 a resource
cap was hit (the best answer found is still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .bench import format_table, run_bench
from .formula import CnfFormula, DnfFormula, FormulaError, parse_cnf, parse_dnf, to_dimacs
from .oracle import (
    GenParams,
    OracleCapExceeded,
    SoundnessAbort,
    gen_instance,
    oracle_dnf_max,
    oracle_maxsat,
    replay_fixture,
    run_diff,
)
from .pstar import pstar_to_dot
from .reduction import reduce
from .search import SoundnessError, build_layered, layered_to_dot
from .solver import SolveOptions, build_pipeline, lift_result, solve_dnf
from .triegraph import trie_to_dot

EXIT_OK, EXIT_PARSE, EXIT_SOUNDNESS, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    input: str = "-"
    format: str = "cnf"
    algorithm: str = "improved"
    order: str | list[int] = "by-index"
    json: bool = False
    timing: bool = False
    dot: str | None = None
    trace: str | None = None
    options: dict = field(default_factory=dict)


def _order(text: str) -> str | list[int]:
    if text == "by-index":
        return text
    if text.startswith("explicit:"):
        try:
            return [int(x) for x in text[len("explicit:"):].split(",") if x.strip()]
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected 'by-index' or 'explicit:2,3,1,...', got {text!r}")


def _int_range(text: str) -> list[int]:
    """``5``, ``1-8`` or ``5,10,15``."""
    out = []
    for part in text.split(","):
        if "-" in part.strip("-"):
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(cfg: RunConfig) -> CnfFormula | DnfFormula:
    text = _read(cfg.input)
    return parse_cnf(text) if cfg.format == "cnf" else parse_dnf(text)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _ids(ids) -> list[int]:
    return sorted(ids)


# --- subcommands ------------------------------------------------------------

def cmd_solve(cfg: RunConfig) -> int:
    formula = _load(cfg)
    is_cnf = isinstance(formula, CnfFormula)
    unit = "clauses" if is_cnf else "conjunctions"
    items = len(formula.clauses) if is_cnf else len(formula.conjunctions)
    report = {"instance": {"vars": formula.num_vars, "clauses": items, "format": cfg.format},
              "algorithm": cfg.algorithm}

    if cfg.algorithm == "oracle":
        try:
            best, witness = oracle_maxsat(formula) if is_cnf else oracle_dnf_max(formula)
        except OracleCapExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAP
        report.update(best_size=best, assignment=witness.bits(), satisfied_ids=None, stats={})
        if cfg.json:
            _emit(report)
        else:
            print(f"{best} of {items} {unit} (exhaustive)")
            print(f"assignment: {witness.bits()}")
        return EXIT_OK

    options = SolveOptions(algorithm=cfg.algorithm, order=cfg.order,
                           trace=cfg.trace is not None, **cfg.options)
    if is_cnf:
        d, rmap = reduce(formula)
        inner = solve_dnf(d, options)
        result = lift_result(formula, rmap, inner)
        best, ids, assignment = result.best_size, result.clause_ids, result.assignment
        report["conjunction_ids"] = _ids(inner.best_conj_ids)
    else:
        inner = solve_dnf(formula, options)
        best, ids, assignment = inner.best_size, inner.best_conj_ids, inner.best_assignment

    if cfg.trace is not None:
        lines = "".join(json.dumps(ev, sort_keys=True) + "\n" for ev in inner.trace)
        if cfg.trace == "-":
            sys.stderr.write(lines)
        else:
            Path(cfg.trace).write_text(lines)

    report.update(
        best_size=best,
        satisfied_ids=_ids(ids),
        assignment=assignment.bits(),
        stats=inner.stats.as_dict(timing=cfg.timing),
        truncated=inner.truncated,
    )
    if inner.truncated:
        report["truncation_reason"] = inner.truncation_reason
    if cfg.json:
        _emit(report)
    else:
        print(f"{best} of {items} {unit}")
        print(f"satisfied {unit}: {' '.join(map(str, _ids(ids))) or '-'}")
        print(f"assignment: {assignment.bits()}")
        stats = inner.stats.as_dict(timing=cfg.timing)
        print("stats: " + ", ".join(f"{k}={v:.4f}" if isinstance(v, float) else f"{k}={v}" for k, v in stats.items()))
        if inner.truncated:
            print(f"warning: search truncated ({inner.truncation_reason})", file=sys.stderr)
    return EXIT_CAP if inner.truncated else EXIT_OK


def cmd_reduce(cfg: RunConfig) -> int:
    f = parse_cnf(_read(cfg.input))
    d, rmap = reduce(f)
    if cfg.json:
        _emit({
            "instance": {"vars": f.num_vars, "clauses": len(f.clauses)},
            "dnf": {"vars": d.num_vars, "conjunctions": d.to_lists()},
            "aux_var_of_clause": {str(k): v for k, v in rmap.aux_var_of_clause.items()},
        })
    else:
        comments = [f"clause {c} -> conjunctions {a},{b} (aux variable {rmap.aux_var_of_clause[c]})"
                    for c, (a, b) in rmap.conj_pair_of_clause.items()]
        sys.stdout.write(to_dimacs(d, comments))
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    cfg.algorithm = "oracle"
    return cmd_solve(cfg)


def cmd_gen(cfg: RunConfig, args: argparse.Namespace) -> int:
    try:
        f = gen_instance(GenParams(args.vars, args.clauses, args.seed, args.unit_fraction))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = to_dimacs(f, [f"generated vars={args.vars} clauses={args.clauses} seed={args.seed} "
                         f"unit_fraction={args.unit_fraction}"])
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_diff(cfg: RunConfig, args: argparse.Namespace) -> int:
    options = SolveOptions(order=cfg.order, **cfg.options)
    if args.replay:
        results = {}
        for path in args.replay:
            results[path] = replay_fixture(Path(path).read_text(), options)
        _emit({"replay": results})
        return EXIT_OK if all(r["reproduced"] for r in results.values()) else EXIT_SOUNDNESS
    params = [GenParams(m, n, args.seed * 1_000_003 + m * 1000 + n, args.unit_fraction)
              for m in _int_range(args.vars) for n in _int_range(args.clauses)]
    fixtures = []
    for path in args.instance or ():
        fixtures.append(parse_cnf(Path(path).read_text()))
    try:
        report = run_diff(params, args.count, args.out, options, fixtures)
    except SoundnessAbort as exc:
        print(exc.report.to_json())
        print(f"error: soundness violation, instance written to {exc.path}", file=sys.stderr)
        return EXIT_SOUNDNESS
    report.seed = args.seed
    print(report.to_json())
    return EXIT_OK


def cmd_bench(cfg: RunConfig, args: argparse.Namespace) -> int:
    options = SolveOptions(order=cfg.order, time_budget=args.time_budget, **cfg.options)
    report = run_bench(_int_range(args.clauses), _int_range(args.vars), args.reps, args.seed,
                       args.time_budget, options)
    if cfg.json:
        data = report.to_dict()
        if not cfg.timing:
            for row in data["rows"]:
                row.pop("median_seconds")
            data.pop("slope_clauses")
            data.pop("slope_vars")
        _emit(data)
    else:
        print(format_table(report))
    return EXIT_OK


def cmd_dot(cfg: RunConfig, args: argparse.Namespace) -> int:
    formula = _load(cfg)
    d = reduce(formula)[0] if isinstance(formula, CnfFormula) else formula
    pipe = build_pipeline(d, cfg.order)
    if args.what == "trie":
        out = trie_to_dot(pipe.graph)
    elif args.what == "layered":
        out = layered_to_dot(build_layered(pipe.graph, cfg.options.get("work_budget")))
    else:
        out = "".join(pstar_to_dot(p) for p in pipe.pgraphs)
    if cfg.dot and cfg.dot != "-":
        Path(cfg.dot).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------

def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", type=_order, default="by-index",
                   help="variable ordering: by-index (default) or explicit:2,3,1,...")
    p.add_argument("--no-case2-check", action="store_true",
                   help="reconnect every lower descendant when merging")
    p.add_argument("--prune", choices=["clique", "count"], default="clique",
                   help="recursive-call bound: conflict clique cover (default) or admitted count")
    p.add_argument("--depth-cap", type=int, default=None)
    p.add_argument("--work-budget", type=int, default=5_000_000)
    p.add_argument("--time-budget", type=float, default=None, help="seconds per solve")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twomaxsat", description="2-MAXSAT via trie-like graph search")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("solve", help="solve a CNF (2-MAXSAT) or DNF instance")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=["cnf", "dnf"], default="cnf")
    p.add_argument("--algorithm", choices=["improved", "basic", "oracle"], default="improved")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include elapsed time in the output")
    p.add_argument("--trace", metavar="PATH", help="write recursive-call trace as JSON lines ('-' = stderr)")
    _search_flags(p)

    p = sub.add_parser("reduce", help="print the DNF of a 2-CNF instance")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="exhaustive optimum")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=["cnf", "dnf"], default="cnf")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="seeded random 2-CNF instance")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--clauses", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unit-fraction", type=float, default=0.0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("diff", help="compare the solver with the exhaustive oracle")
    p.add_argument("--vars", default="5", help="count, range 1-8 or list")
    p.add_argument("--clauses", default="6", help="count, range 1-10 or list")
    p.add_argument("--count", type=int, default=100, help="instances per (vars, clauses) point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unit-fraction", type=float, default=0.0)
    p.add_argument("--out", help="directory for shrunk counterexample fixtures")
    p.add_argument("--instance", action="append", help="also check this DIMACS file")
    p.add_argument("--replay", nargs="+", help="re-run stored fixtures and compare recorded sizes")
    _search_flags(p)

    p = sub.add_parser("bench", help="runtime scaling table")
    p.add_argument("--clauses", default="10,20,30,40,50")
    p.add_argument("--vars", default="5,10,15,20")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    _search_flags(p)
    p.set_defaults(time_budget=5.0)

    p = sub.add_parser("dot", help="Graphviz output of the intermediate graphs")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--format", choices=["cnf", "dnf"], default="cnf")
    p.add_argument("--what", choices=["trie", "pstar", "layered"], default="trie")
    p.add_argument("-o", "--output", dest="dot")
    p.add_argument("--order", type=_order, default="by-index")
    p.add_argument("--work-budget", type=int, default=None)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    options = {}
    if hasattr(args, "prune"):
        options = dict(case2_check=not args.no_case2_check, prune=args.prune,
                       depth_cap=args.depth_cap, work_budget=args.work_budget)
        if args.subcommand != "bench":
            options["time_budget"] = args.time_budget
    elif getattr(args, "work_budget", None) is not None:
        options = {"work_budget": args.work_budget}
    return RunConfig(
        subcommand=args.subcommand,
        input=getattr(args, "input", "-"),
        format=getattr(args, "format", "cnf"),
        algorithm=getattr(args, "algorithm", "improved"),
        order=getattr(args, "order", "by-index"),
        json=getattr(args, "json", False),
        timing=getattr(args, "timing", False),
        dot=getattr(args, "dot", None),
        trace=getattr(args, "trace", None),
        options=options,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        if cfg.subcommand == "solve":
            return cmd_solve(cfg)
        if cfg.subcommand == "reduce":
            return cmd_reduce(cfg)
        if cfg.subcommand == "oracle":
            return cmd_oracle(cfg)
        if cfg.subcommand == "gen":
            return cmd_gen(cfg, args)
        if cfg.subcommand == "diff":
            return cmd_diff(cfg, args)
        if cfg.subcommand == "bench":
            return cmd_bench(cfg, args)
        return cmd_dot(cfg, args)
    except FormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SoundnessError as exc:
        print(f"soundness violation: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS


if __name__ == "__main__":
    sys.exit(main())
