"""Command-line front end: ``selkow {bounds,sample,oracle,verify,counterexample}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .bounds import rational_str, selkow_bound, to_decimal
from .graph import (
    Graph,
    GraphError,
    counterexample_graph,
    counterexample_spec,
    parse_dimacs,
    parse_edge_list,
    parse_gen_spec,
)
from .oracle import (
    DEFAULT_LIMIT,
    EnumerationLimitError,
    bound_sandwich,
    brute_force_alpha,
    enumerate_exact,
    refutation_check,
    verify_proof_chain,
)
from .rng import DEFAULT_SEED
from .sampler import ESTIMANDS, las_vegas_search, monte_carlo

EXIT_FAIL = 1
EXIT_USAGE = 2


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def load_graph(args) -> Graph:
    if args.gen is not None:
        return parse_gen_spec(args.gen)
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    fmt = args.format
    if fmt == "auto":
        starts = {line.split()[0] for line in text.splitlines() if line.split()}
        fmt = "dimacs" if starts & {"p", "e", "c"} else "edges"
    if fmt == "dimacs":
        return parse_dimacs(text)
    return parse_edge_list(text, one_based=args.one_based)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _q_cells(q: Fraction | None) -> list:
    if q is None:
        return ["", "", ""]
    return [q.numerator, q.denominator, to_decimal(q)]


# --- subcommands ------------------------------------------------------------------


def cmd_bounds(args) -> int:
    g = load_graph(args)
    report = selkow_bound(g)
    if args.output == "json":
        print(json.dumps({"n": g.n, "m": g.m, **report.to_json()}))
    elif args.output == "csv":
        rows = [["quantity", "vertex", "num", "den", "decimal"]]
        rows.append(["cw", "", *_q_cells(report.cw)])
        rows.append(["selkow", "", *_q_cells(report.selkow)])
        for v in range(g.n):
            rows.append(["cw_term", v, *_q_cells(report.per_vertex_cw_term[v])])
            rows.append(["correction", v, *_q_cells(report.per_vertex_correction[v])])
        sys.stdout.write(_csv(rows))
    else:
        print(f"graph: n={g.n} m={g.m}")
        print(f"{'vertex':>6} {'deg':>4} {'cw term':>12} {'correction':>14}")
        for v in range(g.n):
            t, c = report.per_vertex_cw_term[v], report.per_vertex_correction[v]
            print(f"{v:>6} {g.degree(v):>4} {rational_str(t):>12} {rational_str(c):>14}")
        print(f"CW     = {rational_str(report.cw)} ({to_decimal(report.cw)})")
        print(f"Selkow = {rational_str(report.selkow)} ({to_decimal(report.selkow)})")
    return 0


def cmd_sample(args) -> int:
    g = load_graph(args)
    names = [s for s in args.estimands.split(",") if s] if args.estimands else []
    reports = monte_carlo(g, names, args.trials, args.seed, args.vertex, args.workers) if names else []
    lv = None
    if args.las_vegas:
        target = Fraction(args.target) if args.target is not None else None
        lv = las_vegas_search(g, target, args.max_trials, args.seed)

    if args.output == "csv":
        rows = [["estimand", "vertex", "trials", "seed", "mean_num", "mean_den",
                 "mean_decimal", "standard_error"]]
        for r in reports:
            vertex = "" if r.vertex is None else r.vertex
            rows.append([r.estimand, vertex, r.trials, r.seed, *_q_cells(r.mean),
                         repr(r.standard_error)])
        if lv is not None:
            rows.append(["las_vegas_size", "", lv.trials, args.seed, len(lv.best), 1,
                         to_decimal(Fraction(len(lv.best))), ""])
        sys.stdout.write(_csv(rows))
    elif args.output == "json":
        for r in reports:
            print(json.dumps(r.to_json()))
        if lv is not None:
            print(json.dumps(lv.to_json()))
    else:
        for r in reports:
            who = f"[v={r.vertex}]" if r.vertex is not None else ""
            print(f"{r.estimand}{who}: mean {to_decimal(r.mean)} "
                  f"(se {r.standard_error:.6f}, {r.trials} trials, seed {r.seed})")
        if lv is not None:
            state = "reached" if lv.reached else "NOT reached"
            print(f"las vegas: size {len(lv.best)} vs ceil({rational_str(lv.target)}) = "
                  f"{lv.threshold}, {state} after {lv.trials} trials; set {list(lv.best)}")
    if lv is not None and not lv.reached:
        return EXIT_FAIL
    return 0


def cmd_oracle(args) -> int:
    g = load_graph(args)
    stats = enumerate_exact(g, limit=args.limit, workers=args.workers)
    alpha, witness = brute_force_alpha(g)
    if args.output == "json":
        print(json.dumps({"alpha": alpha, "alpha_witness": witness, **stats.to_json()}))
    elif args.output == "csv":
        rows = [["quantity", "vertex", "num", "den", "decimal"]]
        for name in ("expected_i1", "expected_i2", "expected_union",
                     "expected_residual_cw", "expected_cw_h"):
            rows.append([name, "", *_q_cells(getattr(stats, name))])
        for name in ("prob_in_i1", "prob_in_i2", "prob_in_h"):
            for v, q in enumerate(getattr(stats, name)):
                rows.append([name, v, *_q_cells(q)])
        rows.append(["alpha", "", *_q_cells(Fraction(alpha))])
        sys.stdout.write(_csv(rows))
    else:
        print(f"graph: n={g.n} m={g.m}, {stats.orderings} orderings enumerated")
        for name in ("expected_i1", "expected_i2", "expected_union",
                     "expected_residual_cw", "expected_cw_h"):
            q = getattr(stats, name)
            print(f"{name:<22} {rational_str(q):>16}  ({to_decimal(q)})")
        print(f"{'vertex':>6} {'P(I1)':>12} {'P(I2)':>12} {'P(H)':>12}")
        for v in range(g.n):
            print(f"{v:>6} {rational_str(stats.prob_in_i1[v]):>12} "
                  f"{rational_str(stats.prob_in_i2[v]):>12} {rational_str(stats.prob_in_h[v]):>12}")
        print(f"alpha = {alpha}, witness {witness}")
    return 0


def cmd_verify(args) -> int:
    g = load_graph(args)
    chain = verify_proof_chain(g, limit=args.limit, workers=args.workers)
    checks = chain.checks + bound_sandwich(g)
    ok = all(c.passed for c in checks)
    if args.output == "json":
        print(json.dumps({
            "n": g.n,
            "passed": ok,
            "checks": [c.to_json() for c in checks],
            "stats": chain.stats.to_json(),
        }))
    elif args.output == "csv":
        rows = [["check", "passed", "lhs_num", "lhs_den", "lhs_decimal",
                 "rhs_num", "rhs_den", "rhs_decimal"]]
        for c in checks:
            rows.append([c.name, c.passed, *_q_cells(c.lhs), *_q_cells(c.rhs)])
        sys.stdout.write(_csv(rows))
    else:
        for c in checks:
            rel = ""
            if c.lhs is not None:
                rel = f" {rational_str(c.lhs)} vs {rational_str(c.rhs)}"
            tail = f" ({c.detail})" if c.detail else ""
            print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}{rel}{tail}")
        print("all checks passed" if ok else "SOME CHECKS FAILED")
    return 0 if ok else EXIT_FAIL


def cmd_counterexample(args) -> int:
    spec = counterexample_spec(args.n, args.f)
    report = refutation_check(spec, limit=args.limit, workers=args.workers)
    if args.output == "json":
        print(json.dumps({"f": args.f, "passed": report.passed, **report.to_json()}))
    elif args.output == "csv":
        rows = [["quantity", "num", "den", "decimal"]]
        rows.append(["closed_form_prob", *_q_cells(report.closed_form_prob)])
        rows.append(["enumerated_prob", *_q_cells(report.enumerated_prob)])
        rows.append(["claimed_rhs", *_q_cells(report.claimed_rhs)])
        rows.append(["epsilon", *_q_cells(report.epsilon)])
        sys.stdout.write(_csv(rows))
    else:
        g = counterexample_graph(spec)
        print(f"counterexample: n={spec.n}, F={args.f} on {spec.f_graph.n} vertices, "
              f"v={spec.v} w={spec.w} x={spec.x}, degree of x = {g.degree(spec.x)}")
        print(f"favourable orderings C({spec.n - 1},2)*({spec.n - 3})! = "
              f"{report.favourable_orderings}")
        print(f"P(v in I2) closed form = {rational_str(report.closed_form_prob)}")
        if report.enumerated_prob is None:
            print(f"P(v in I2) enumerated  = skipped (n > limit {args.limit})")
        else:
            print(f"P(v in I2) enumerated  = {rational_str(report.enumerated_prob)}"
                  f" ({'matches' if report.matches_closed_form else 'MISMATCH'})")
        print(f"claimed lower bound    = {rational_str(report.claimed_rhs)}")
        print(f"ratio epsilon          = {rational_str(report.epsilon)} "
              f"({to_decimal(report.epsilon)})")
        print("verdict: REFUTED" if report.refuted else "verdict: not refuted at this size")
    return 0 if report.passed else EXIT_FAIL


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help=f"master seed, unsigned 64-bit (default {DEFAULT_SEED})")
    common.add_argument("--trials", type=_positive, default=100_000)
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                        help="largest n enumerated exactly")
    common.add_argument("--workers", type=_positive, default=1,
                        help="processes for enumeration / trials; results do not depend on it")
    common.add_argument("--output", choices=("human", "json", "csv"), default="human")

    graph_in = argparse.ArgumentParser(add_help=False)
    src = graph_in.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE")
    src.add_argument("--gen", metavar="KIND:PARAMS",
                     help="e.g. path:5, star:3, gnp:8:0.5:1, hypercube:3, counterexample:7:path")
    graph_in.add_argument("--format", choices=("auto", "dimacs", "edges"), default="auto")
    graph_in.add_argument("--one-based", action="store_true",
                          help="edge-list ids start at 1")

    parser = argparse.ArgumentParser(
        prog="selkow",
        description="Independence-number lower bounds and their random-ordering proofs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common, graph_in], help="Caro-Wei and Selkow bounds")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sample", parents=[common, graph_in],
                       help="Monte Carlo estimates and Las Vegas search")
    p.add_argument("--estimands", default="e_i1,e_i2,e_union",
                   help=f"comma list from {','.join(ESTIMANDS)}")
    p.add_argument("--vertex", type=int, help="vertex for the p_* estimands")
    p.add_argument("--las-vegas", action="store_true")
    p.add_argument("--target", help="Las Vegas target as a rational, default the Selkow bound")
    p.add_argument("--max-trials", type=_positive, default=10_000)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("oracle", parents=[common, graph_in],
                       help="exact statistics over all orderings")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common, graph_in],
                       help="exact check of the bound argument and the alpha sandwich")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", parents=[common],
                       help="probability of v in I2 for the three-vertex extension family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", default="empty", help="empty | complete | path | gnp:P:SEED")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, EnumerationLimitError, ValueError, OSError) as exc:
        print(f"selkow {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
