"""Command-line front end.

Subcommands: ``deps`` (full relation or one variable's dependents),
``query`` (single pair membership), ``eval`` (brute-force truth value),
``check`` (oracle cross-validation), ``bench`` (chain-family timings).

Exit codes: 0 success / dependent, 1 independent or failed checks,
2 parse or input errors, 3 usage errors, 4 budget exceeded.
Text output is byte-stable for identical inputs and flags; JSON output
additionally carries a run report with timings.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from . import __version__
from .engine import ENV_VAR
from .families import chain_formula
from .formula import EXISTS, FormulaError, QcnfFormula
from .oracles import (
    BudgetExceededError,
    EvalBudget,
    check_cumulative_shift,
    check_transposition_soundness,
    count_dmat_reorderings,
    dmat_contains,
    evaluate,
    pec_reachable_oracle,
)
from .pecgraph import build_connection_graph, pec_walk
from .qdimacs import QdimacsParseError, formula_digest, parse_qdimacs_with_diagnostics
from .resdep import (
    DependencyRelation,
    QueryStats,
    dres_contains,
    dres_full,
    dres_of_existential,
    dtriv_full,
    relation_to_json_dict,
    relation_to_text,
)
from .respath import ResolutionPath

EXIT_OK = 0
EXIT_INDEPENDENT = 1
EXIT_PARSE = 2
EXIT_USAGE = 3
EXIT_BUDGET = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qrespath", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qrespath {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    deps = sub.add_parser("deps", help="compute a dependency relation")
    deps.add_argument("file")
    deps.add_argument("--scheme", choices=("res", "triv"), default="res")
    deps.add_argument("--var", type=int, default=None, help="restrict to one source variable")
    deps.add_argument("--witness", action="store_true")
    deps.add_argument("--format", choices=("text", "json"), default="text")
    deps.add_argument("--jobs", type=int, default=1)
    deps.add_argument("--engine", choices=("auto", "numba", "numpy"), default=None)
    deps.add_argument("--verbose", action="store_true", help="annotate variables with quantifier and depth")

    query = sub.add_parser("query", help="decide one dependency pair")
    query.add_argument("file")
    query.add_argument("x", type=int)
    query.add_argument("y", type=int)
    query.add_argument("--witness", action="store_true")
    query.add_argument("--format", choices=("text", "json"), default="text")
    query.add_argument("--engine", choices=("auto", "numba", "numpy"), default=None)

    ev = sub.add_parser("eval", help="brute-force semantic value")
    ev.add_argument("file")
    ev.add_argument("--max-vars", type=int, default=20)
    ev.add_argument("--format", choices=("text", "json"), default="text")

    check = sub.add_parser("check", help="cross-validate oracles on a formula")
    check.add_argument("file")
    check.add_argument("--max-vars", type=int, default=14)
    check.add_argument("--max-reorderings", type=int, default=10000)
    check.add_argument("--format", choices=("text", "json"), default="text")

    bench = sub.add_parser("bench", help="time dependent-set queries on synthetic families")
    bench.add_argument("--family", choices=("chain",), default="chain")
    bench.add_argument("--sizes", default="10000,20000", help="comma-separated target sizes")
    bench.add_argument("--runs", type=int, default=5)
    bench.add_argument(
        "--engines",
        default="auto",
        help="comma-separated engines, or 'both' to compare numba and numpy",
    )
    bench.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _load(path: str) -> tuple[QcnfFormula, dict, float]:
    t0 = time.perf_counter()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from None
    try:
        formula, diag = parse_qdimacs_with_diagnostics(text)
    except QdimacsParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from None
    diagnostics = {
        "tautological_clauses": diag.tautological_clauses,
        "duplicate_literals": diag.duplicate_literals,
        "free_variables": list(diag.free_variables),
        "unused_prefix_variables": list(diag.unused_prefix_variables),
    }
    return formula, diagnostics, time.perf_counter() - t0


def _report(command: str, formula: QcnfFormula, stats: QueryStats, parse_s: float, t0: float, pairs: int) -> dict:
    return {
        "command": command,
        "input_digest": formula_digest(formula),
        "timings": {
            "parse_s": parse_s,
            "transform_s": stats.transform_s,
            "graph_s": stats.graph_s,
            "walk_s": stats.walk_s,
            "total_s": time.perf_counter() - t0,
        },
        "counts": {
            "vertices": stats.vertices,
            "edges": stats.edges,
            "queue_pushes": stats.queue_pushes,
            "walks": stats.walks,
            "pairs": pairs,
        },
    }


def _witness_json(witness: tuple[ResolutionPath, ResolutionPath] | None) -> dict | None:
    if witness is None:
        return None
    pos, neg = witness
    return {
        "positive_source": {
            "clauses": [c + 1 for c in pos.clause_indices],
            "rendered": pos.render(),
        },
        "negative_source": {
            "clauses": [c + 1 for c in neg.clause_indices],
            "rendered": neg.render(),
        },
    }


def _annotate(formula: QcnfFormula, v: int) -> str:
    return f"{v}[{formula.quantifier(v)}@{formula.depth(v)}]"


def cmd_deps(args) -> int:
    t0 = time.perf_counter()
    formula, diagnostics, parse_s = _load(args.file)
    stats = QueryStats()
    witnesses: dict[tuple[int, int], dict | None] = {}
    try:
        if args.var is not None:
            relation = _single_variable_relation(formula, args, stats)
        elif args.scheme == "res":
            relation = dres_full(formula, engine=args.engine, jobs=args.jobs, stats=stats)
        else:
            relation = dtriv_full(formula)
    except FormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ordered = relation.sorted_pairs(formula)
    if args.witness and args.scheme == "res":
        for x, y in ordered:
            if formula.quantifier(x) == EXISTS:
                result = dres_contains(formula, x, y, want_witness=True, engine=args.engine)
                witnesses[(x, y)] = _witness_json(result.witness)

    if args.format == "json":
        doc = relation_to_json_dict(formula, relation, diagnostics)
        if witnesses:
            doc["witnesses"] = [
                {"x": x, "y": y, "paths": w} for (x, y), w in sorted(witnesses.items()) if w
            ]
        doc["report"] = _report("deps", formula, stats, parse_s, t0, len(ordered))
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for x, y in ordered:
            if args.verbose:
                print(f"{_annotate(formula, x)} {_annotate(formula, y)}")
            else:
                print(f"{x} {y}")
            w = witnesses.get((x, y))
            if w:
                print(f"  + {w['positive_source']['rendered']}")
                print(f"  - {w['negative_source']['rendered']}")
    return EXIT_OK


def _single_variable_relation(formula: QcnfFormula, args, stats: QueryStats) -> DependencyRelation:
    v = args.var
    formula.depth(v)  # raises FormulaError for unknown variables
    if args.scheme == "triv":
        pairs = {(a, b) for a, b in dtriv_full(formula).pairs if a == v}
        return DependencyRelation(scheme="triv", pairs=frozenset(pairs))
    if formula.quantifier(v) == EXISTS:
        found = dres_of_existential(formula, v, engine=args.engine, stats=stats)
        return DependencyRelation(scheme="res", pairs=frozenset((v, x) for x in found))
    pairs = set()
    for y in sorted(formula.right_of(v), key=formula.depth):
        if formula.quantifier(y) == EXISTS:
            if dres_contains(formula, v, y, engine=args.engine, stats=stats).dependent:
                pairs.add((v, y))
    return DependencyRelation(scheme="res", pairs=frozenset(pairs))


def cmd_query(args) -> int:
    t0 = time.perf_counter()
    formula, diagnostics, parse_s = _load(args.file)
    if args.x == args.y:
        print("error: the two variables must be distinct", file=sys.stderr)
        return EXIT_USAGE
    stats = QueryStats()
    try:
        result = dres_contains(
            formula, args.x, args.y, want_witness=args.witness, engine=args.engine, stats=stats
        )
    except FormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    verdict = "dependent" if result.dependent else "independent"
    if args.format == "json":
        doc = {
            "scheme": "res",
            "formula_hash": formula_digest(formula),
            "x": args.x,
            "y": args.y,
            "dependent": result.dependent,
            "witness": _witness_json(result.witness),
            "diagnostics": diagnostics,
            "report": _report("query", formula, stats, parse_s, t0, int(result.dependent)),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(verdict)
        if result.witness is not None:
            pos, neg = result.witness
            print(f"  + {pos.render()}")
            print(f"  - {neg.render()}")
    return EXIT_OK if result.dependent else EXIT_INDEPENDENT


def cmd_eval(args) -> int:
    t0 = time.perf_counter()
    formula, diagnostics, parse_s = _load(args.file)
    budget = EvalBudget(max_variables=args.max_vars)
    try:
        value = evaluate(formula, budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    verdict = "SAT" if value == 1 else "UNSAT"
    if args.format == "json":
        doc = {
            "formula_hash": formula_digest(formula),
            "value": value,
            "verdict": verdict,
            "diagnostics": diagnostics,
            "report": _report("eval", formula, QueryStats(), parse_s, t0, 0),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(verdict)
    return EXIT_OK


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    formula, diagnostics, parse_s = _load(args.file)
    budget = EvalBudget(max_variables=args.max_vars, max_reorderings=args.max_reorderings)
    stats = QueryStats()
    checks: list[dict] = []
    try:
        relation = dres_full(formula, stats=stats)
        checks.append(_check_containment(formula, relation, budget))
        checks.append(_check_transpositions(formula, relation, budget))
        checks.append(_check_cumulative(formula, relation, budget))
        checks.append(_check_pec_oracle(formula, stats))
    except BudgetExceededError as exc:
        print(f"error: {exc.budget_name} budget exceeded (needs {exc.needed}, allowed {exc.allowed})", file=sys.stderr)
        return EXIT_BUDGET
    ok = all(c["passed"] for c in checks)
    if args.format == "json":
        doc = {
            "formula_hash": formula_digest(formula),
            "checks": checks,
            "passed": ok,
            "diagnostics": diagnostics,
            "report": _report("check", formula, stats, parse_s, t0, 0),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for c in checks:
            status = "pass" if c["passed"] else "FAIL"
            print(f"check {c['name']}: {status} ({c['detail']})")
        print("all checks passed" if ok else "some checks failed")
    return EXIT_OK if ok else EXIT_INDEPENDENT


def _check_containment(formula: QcnfFormula, relation: DependencyRelation, budget: EvalBudget) -> dict:
    """D^mat must sit inside D^res; also counts strictness evidence."""
    triv = dtriv_full(formula)
    if not relation.pairs <= triv.pairs:
        return {
            "name": "containment",
            "passed": False,
            "detail": f"res pair outside triv: {sorted(relation.pairs - triv.pairs)[0]}",
        }
    ordered = formula.variables
    violations = []
    strict = 0
    checked = 0
    skipped = 0
    for i, x in enumerate(ordered):
        for y in ordered[i + 1 :]:
            if formula.quantifier(x) == formula.quantifier(y):
                continue
            if count_dmat_reorderings(formula, x, y) > budget.max_reorderings:
                skipped += 1
                continue
            in_mat = dmat_contains(formula, x, y, budget)
            checked += 1
            if in_mat and (x, y) not in relation.pairs:
                violations.append((x, y))
            if not in_mat and (x, y) in relation.pairs:
                strict += 1
    passed = not violations
    detail = f"pairs checked {checked}, strict {strict}, skipped {skipped}"
    if violations:
        detail += f", violation {violations[0]}"
    return {"name": "containment", "passed": passed, "detail": detail}


def _check_transpositions(formula: QcnfFormula, relation: DependencyRelation, budget: EvalBudget) -> dict:
    ok, counterexample = check_transposition_soundness(formula, relation.pairs, budget)
    detail = f"{len(formula.prefix) - 1} adjacent pairs"
    if not ok:
        detail += f", counterexample {counterexample}"
    return {"name": "transpositions", "passed": ok, "detail": detail}


def _check_cumulative(formula: QcnfFormula, relation: DependencyRelation, budget: EvalBudget) -> dict:
    seeds_list = [set()] + [{v} for v in formula.variables] + [set(formula.variables)]
    bad = None
    for seeds in seeds_list:
        if not check_cumulative_shift(formula, relation.pairs, seeds, budget):
            bad = sorted(seeds)
            break
    detail = f"{len(seeds_list)} shifts"
    if bad is not None:
        detail += f", counterexample seed set {bad}"
    return {"name": "cumulative", "passed": bad is None, "detail": detail}


def _check_pec_oracle(formula: QcnfFormula, stats: QueryStats) -> dict:
    from .cnf3 import to_q3cnf
    from .pecgraph import lit_to_vertex

    form = to_q3cnf(formula, frozenset(formula.existential_vars))
    graph = build_connection_graph(form.formula, form.connecting)
    stats.record_graph(graph)
    mismatches = 0
    sources = 0
    for lit in sorted(form.formula.literals):
        s = lit_to_vertex(lit)
        labeling = pec_walk(graph, s)
        stats.record_walk(labeling)
        expected = pec_reachable_oracle(graph, s)
        sources += 1
        for v in range(graph.vertex_count):
            if v == s:
                continue
            if labeling.colors_at(v) != expected[v]:
                mismatches += 1
    return {
        "name": "pec-oracle",
        "passed": mismatches == 0,
        "detail": f"{sources} sources, {mismatches} mismatches",
    }


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        print("error: --sizes wants comma-separated integers", file=sys.stderr)
        return EXIT_USAGE
    if not sizes or args.runs < 1:
        print("error: need at least one size and one run", file=sys.stderr)
        return EXIT_USAGE
    engines = _bench_engines(args.engines)
    rows = []
    for size in sizes:
        formula = chain_formula(size)
        y = 1
        for engine in engines:
            stats = QueryStats()
            dres_of_existential(formula, y, engine=engine, stats=stats)  # warmup
            times = []
            for _ in range(args.runs):
                t0 = time.perf_counter()
                found = dres_of_existential(formula, y, engine=engine)
                times.append(time.perf_counter() - t0)
            rows.append(
                {
                    "family": args.family,
                    "size": size,
                    "size_literals": formula.size,
                    "engine": engine,
                    "runs": args.runs,
                    "median_s": statistics.median(times),
                    "min_s": min(times),
                    "dependents": len(found),
                    "vertices": stats.vertices,
                    "edges": stats.edges,
                    "queue_pushes": stats.queue_pushes,
                }
            )
    if args.format == "json":
        print(json.dumps({"rows": rows}, indent=2, sort_keys=True))
    else:
        header = f"{'family':<8} {'size':>9} {'|F|':>9} {'engine':<6} {'median_s':>10} {'min_s':>10}"
        print(header)
        for r in rows:
            print(
                f"{r['family']:<8} {r['size']:>9} {r['size_literals']:>9} "
                f"{r['engine']:<6} {r['median_s']:>10.6f} {r['min_s']:>10.6f}"
            )
        for engine in engines:
            series = [r for r in rows if r["engine"] == engine]
            for a, b in zip(series, series[1:]):
                ratio = b["median_s"] / a["median_s"] if a["median_s"] > 0 else float("inf")
                print(
                    f"ratio {engine} {a['size']}->{b['size']}: {ratio:.2f} "
                    f"(sizes x{b['size_literals'] / a['size_literals']:.2f})"
                )
    return EXIT_OK


def _bench_engines(spec: str) -> list[str]:
    from .pecgraph import pec_walk_numba

    have_numba = pec_walk_numba is not None
    spec = spec.strip().lower()
    if spec == "both":
        return ["numba", "numpy"] if have_numba else ["numpy"]
    if spec == "auto":
        return ["numba" if have_numba else "numpy"]
    engines = [e.strip() for e in spec.split(",") if e.strip()]
    for e in engines:
        if e not in ("numba", "numpy"):
            print(f"error: unknown engine {e!r}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        if e == "numba" and not have_numba:
            print("error: numba engine requested but numba is unavailable", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
    return engines


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "deps": cmd_deps,
        "query": cmd_query,
        "eval": cmd_eval,
        "check": cmd_check,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
