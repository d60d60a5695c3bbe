"""Command-line workbench: gen, solve, verify, bench.

Exit codes: 0 success/agreement, 1 disagreement, 2 parse error, 3 guard violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .amortization import fit_exponent
from .formats import (
    FormatError,
    cnf_to_dimacs,
    digest,
    load_instance,
    to_json,
)
from .instances import (
    CnfFormula,
    OuMvInstance,
    TcStarInstance,
    gen_cnf,
    gen_oumv,
    gen_tcstar,
    plant_tcstar,
    validate_tcstar,
)
from .oracles import GuardViolation, oumv_oracle, sat_oracle, tcstar_oracle
from .reduction_diameter import (
    expected_edge_count,
    run_incremental,
    run_node_addition,
    solve_alpha,
    solve_tcstar_subdivided,
    static_block_diameters,
)
from .reduction_flow import decremental_values, run_sat
from .reduction_matching import closed_form_insertions, decremental_bits, run_oumv
from .sweeps import check_diameter, check_flow, check_matching, draw_cnf, draw_oumv, draw_tcstar

EXIT_OK, EXIT_DISAGREE, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        bounds = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return bounds


def parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes, got {text!r}") from None
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise argparse.ArgumentTypeError("sizes must be strictly ascending")
    return sizes


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected I,ALPHA,BETA, got {text!r}")
    return tuple(int(x) for x in parts)


def _emit(args, payload: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(payload)
    elif not args.quiet:
        sys.stdout.write(payload)


def _write_report(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    if not args.quiet:
        sys.stdout.write(text)


# -- gen -------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.problem == "oumv":
        inst = gen_oumv(args.n, args.density, args.seed)
    elif args.problem == "cnf":
        inst = gen_cnf(args.vars, args.clauses, args.width, args.seed)
    else:
        if args.plant is not None:
            inst = plant_tcstar(args.n, args.delta, args.p, args.seed, args.plant, args.density)
        else:
            inst = gen_tcstar(args.n, args.delta, args.p, args.density, args.seed)
        assert validate_tcstar(inst).ok
    if isinstance(inst, CnfFormula) and args.format != "json":
        _emit(args, cnf_to_dimacs(inst))
    else:
        _emit(args, json.dumps(to_json(inst), sort_keys=True) + "\n")
    return EXIT_OK


# -- solve -----------------------------------------------------------------

def _base_report(args, problem: str, mode: str, inst) -> dict:
    doc = to_json(inst)
    return {
        "tool": "gadgetlab",
        "version": __version__,
        "problem": problem,
        "mode": mode,
        "seed": args.seed,
        "instance": {"digest": digest(doc), "document": doc},
    }


def _solve_matching(args, inst: OuMvInstance) -> dict:
    mode = "decremental" if args.decremental else "incremental"
    report = _base_report(args, "matching", mode, inst)
    gad, bits = run_oumv(inst)
    oracle = [int(b) for b in oumv_oracle(inst)]
    answers = {"reduction": bits, "oracle": oracle, "queried_sizes": gad.queried}
    agreement = bits == oracle
    counters = gad.graph.op_count()
    report["closed_form_insertions"] = closed_form_insertions(inst)
    if args.decremental:
        dec = decremental_bits(gad)
        answers["decremental"] = dec
        agreement = agreement and dec == bits[::-1]
    report.update(answers=answers, agreement=agreement, counters=counters.as_dict())
    return report


def _solve_flow(args, f: CnfFormula) -> dict:
    mode = "decremental" if args.decremental else "incremental"
    if args.early_exit:
        mode += "+early-exit"
    report = _base_report(args, "flow", mode, f)
    gad, answer = run_sat(f, early_exit=args.early_exit)
    oracle = sat_oracle(f)
    phases = [
        {"phase": r.phase, "pre_value": r.pre_value, "value": r.value,
         "satisfiable_hint": r.satisfiable_hint}
        for r in gad.results
    ]
    agreement = answer == oracle
    answers = {"reduction": answer, "oracle": oracle, "N": gad.N, "phases": phases}
    if args.decremental:
        values = decremental_values(gad)
        answers["decremental_values"] = values
        agreement = agreement and values == [r.value for r in gad.results][::-1]
    report.update(answers=answers, agreement=agreement,
                  counters=gad.graph.op_count().as_dict())
    return report


def _solve_diameter(args, inst: TcStarInstance) -> dict:
    report = _base_report(args, "diameter", args.mode, inst)
    oracle = tcstar_oracle(inst)
    answers: dict = {"oracle": oracle.answer, "witnesses": [list(w) for w in oracle.witnesses]}
    if args.mode == "static":
        diam = static_block_diameters(inst, args.gamma)
        answer = 4 in diam
        answers["block_diameters"] = diam
        report["gamma"] = args.gamma
        counters = None
    elif args.mode == "incremental":
        h, answer = run_incremental(inst)
        counters = h.graph.op_count().as_dict()
        report["edges"] = h.graph.num_edges
    else:
        alpha = solve_alpha() if args.alpha is None else args.alpha
        run = run_node_addition(inst, alpha)
        answer = run.answer
        answers["phase_diameters"] = run.phase_diameters
        counters = run.hgraph.graph.op_count().as_dict()
        report["credit_ledger"] = run.ledger.to_json()
    answers["reduction"] = answer
    agreement = answer == oracle.answer
    if args.subdivide is not None:
        sub_answer, far, full = solve_tcstar_subdivided(inst, args.subdivide)
        answers["subdivided"] = {"s": args.subdivide, "answer": sub_answer,
                                 "original_pair_max_distance": far,
                                 "diameter": None if full == float("inf") else full}
        agreement = agreement and sub_answer == oracle.answer
    report.update(answers=answers, agreement=agreement)
    if counters is not None:
        report["counters"] = counters
    return report


def cmd_solve(args) -> int:
    path = args.cnf if args.problem == "flow" else args.instance
    if path is None:
        print(f"solve {args.problem}: an instance path is required", file=sys.stderr)
        return EXIT_PARSE
    kind = {"matching": "oumv", "flow": "cnf", "diameter": "tcstar"}[args.problem]
    try:
        inst = load_instance(path, kind)
    except GuardViolation as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, FormatError, ValueError) as exc:
        print(f"cannot parse {path}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if kind == "tcstar" and not validate_tcstar(inst).ok:
        print(f"invalid TC* instance: {validate_tcstar(inst).violations[:5]}", file=sys.stderr)
        return EXIT_PARSE
    solver = {"matching": _solve_matching, "flow": _solve_flow, "diameter": _solve_diameter}
    start = time.perf_counter()
    try:
        report = solver[args.problem](args, inst)
    except GuardViolation as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    report["wall_time"] = time.perf_counter() - start
    _write_report(args, report)
    return EXIT_OK if report["agreement"] else EXIT_DISAGREE


# -- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    failures = []
    start = time.perf_counter()
    for idx in range(args.count):
        if args.problem == "matching":
            inst = draw_oumv(rng, *args.n)
            problems = check_matching(inst)
        elif args.problem == "flow":
            inst = draw_cnf(rng, *args.vars)
            problems = check_flow(inst)
        else:
            inst = draw_tcstar(rng, *args.n)
            problems = check_diameter(inst)
        if problems:
            failures.append({"index": idx, "digest": digest(to_json(inst)), "problems": problems})
    summary = {
        "tool": "gadgetlab",
        "version": __version__,
        "problem": args.problem,
        "count": args.count,
        "seed": args.seed,
        "failures": failures,
        "agreement": not failures,
        "wall_time": time.perf_counter() - start,
    }
    _write_report(args, summary)
    return EXIT_OK if not failures else EXIT_DISAGREE


# -- bench -----------------------------------------------------------------

def bench_rows(problem: str, sizes: list[int], seed: int) -> list[dict]:
    rows = []
    for size in sizes:
        if problem == "matching":
            inst = gen_oumv(size, 0.5, seed)
            gad, _ = run_oumv(inst)
            c = gad.graph.op_count()
            expected = closed_form_insertions(inst)
        elif problem == "flow":
            f = gen_cnf(size, 2 * size, 3, seed)
            gad, _ = run_sat(f)
            c = gad.graph.op_count()
            expected = None
        else:
            inst = gen_tcstar(size, 2, 2, 0.5, seed)
            h, _ = run_incremental(inst)
            c = h.graph.op_count()
            expected = expected_edge_count(inst, size)
        rows.append({"size": size, "insertions": c.insertions, "queries": c.queries,
                     "elementary_steps": c.elementary_steps, "expected_insertions": expected})
    return rows


def cmd_bench(args) -> int:
    rows = bench_rows(args.problem, args.sizes, args.seed)
    fits = {}
    if len(rows) >= 2:
        for col in ("insertions", "elementary_steps"):
            fit = fit_exponent([(r["size"], r[col]) for r in rows])
            fits[col] = {"exponent": fit.exponent, "residual": fit.residual}
    if args.format == "json":
        payload = json.dumps({"problem": args.problem, "seed": args.seed, "rows": rows,
                              "fits": fits}, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        for col, fit in fits.items():
            buf.write(f"# fit {col} exponent={fit['exponent']:.6f} "
                      f"residual={fit['residual']:.3g}\n")
        payload = buf.getvalue()
    if args.report:
        Path(args.report).write_text(payload)
    if not args.quiet:
        sys.stdout.write(payload)
    bad = [r for r in rows
           if r["expected_insertions"] is not None and r["insertions"] != r["expected_insertions"]]
    return EXIT_DISAGREE if bad else EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--report", help="write the JSON report (or bench table) here")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="gadgetlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gadgetlab {__version__}")
    cmds = parser.add_subparsers(dest="command", required=True)

    gen = cmds.add_parser("gen", help="generate an instance file")
    gen_sub = gen.add_subparsers(dest="problem", required=True)
    g = gen_sub.add_parser("oumv", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--out")
    g = gen_sub.add_parser("cnf", parents=[common])
    g.add_argument("--vars", type=int, required=True)
    g.add_argument("--clauses", type=int, default=None)
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--out")
    g = gen_sub.add_parser("tcstar", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta", type=int, default=2)
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--plant", type=parse_triple, default=None, metavar="I,ALPHA,BETA")
    g.add_argument("--out")

    solve = cmds.add_parser("solve", help="run a reduction and compare with the oracle")
    solve_sub = solve.add_subparsers(dest="problem", required=True)
    s = solve_sub.add_parser("matching", parents=[common])
    s.add_argument("--instance", required=True)
    s.add_argument("--decremental", action="store_true")
    s = solve_sub.add_parser("flow", parents=[common])
    s.add_argument("--cnf", required=True)
    s.add_argument("--early-exit", action="store_true")
    s.add_argument("--decremental", action="store_true")
    s = solve_sub.add_parser("diameter", parents=[common])
    s.add_argument("--instance", required=True)
    s.add_argument("--mode", choices=("static", "incremental", "node-add"), default="static")
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--subdivide", type=int, default=None)

    verify = cmds.add_parser("verify", help="seeded reduction-vs-oracle sweep")
    verify_sub = verify.add_subparsers(dest="problem", required=True)
    v = verify_sub.add_parser("matching", parents=[common])
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--n", type=parse_range, default=(2, 16))
    v = verify_sub.add_parser("flow", parents=[common])
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--vars", type=parse_range, default=(4, 14))
    v = verify_sub.add_parser("diameter", parents=[common])
    v.add_argument("--count", type=int, default=50)
    v.add_argument("--n", type=parse_range, default=(2, 10))

    bench = cmds.add_parser("bench", help="operation counts over growing sizes")
    bench_sub = bench.add_subparsers(dest="problem", required=True)
    for name, default in (("matching", "4,8,16,32"), ("flow", "4,6,8"), ("diameter", "2,4,8")):
        b = bench_sub.add_parser(name, parents=[common])
        b.add_argument("--sizes", type=parse_sizes, default=parse_sizes(default))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    handlers = {"gen": cmd_gen, "solve": cmd_solve, "verify": cmd_verify, "bench": cmd_bench}
    if args.command == "gen" and args.problem == "cnf" and args.clauses is None:
        args.clauses = 2 * args.vars
    try:
        return handlers[args.command](args)
    except GuardViolation as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
