"""Command-line front end: ``nestsearch {run,bench,compare,sweep,list-functions}``.

Exit status is 0 on success, 2 on a usage error and 1 on a runtime error.
Results go to stdout (or ``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys

from . import harness
from .benchmarks import CATALOG, catalog_records, get_function
from .exceptions import InvalidParameterError, NotFoundError
from .harness import ALGORITHMS, ExperimentSpec

DEFAULT_GRID_N = (5, 10, 15, 20, 50, 100, 150, 250, 500)
DEFAULT_GRID_PA = (0, 0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.4, 0.5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(item) for item in text.split(",") if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}") from None

    return parse


def _add_cs_flags(p):
    p.add_argument("--nests", type=int, default=15, help="number of nests (default 15)")
    p.add_argument("--pa", type=float, default=0.25, help="abandonment fraction (default 0.25)")
    p.add_argument("--alpha", type=float, default=None, help="step scale")
    p.add_argument("--lambda", dest="lam", type=float, default=2.5, help="Lévy exponent, 1 < lambda < 3")


def _add_common(p, runs=True):
    p.add_argument("--function", required=True, help="benchmark function name")
    p.add_argument("--dim", type=int, default=None, help="dimension (default: the function's default)")
    p.add_argument("--seed", type=int, default=None, help="seed; generated and printed if omitted")
    p.add_argument("--max-evals", type=int, default=100_000, help="evaluation budget")
    p.add_argument("--tol", type=float, default=1e-5, help="success tolerance on the optimum value")
    p.add_argument("--output", default=None, help="write results here instead of stdout")
    if runs:
        p.add_argument("--runs", type=int, default=100, help="independent trials (default 100)")


def build_parser():
    parser = _Parser(prog="nestsearch", description="Cuckoo Search benchmarks and experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="one optimization run")
    _add_common(p, runs=False)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="cs")
    _add_cs_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", default=None, help="write the convergence trace CSV here")

    p = sub.add_parser("bench", help="repeated trials of one algorithm on one function")
    _add_common(p)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="cs")
    _add_cs_flags(p)
    p.add_argument("--format", choices=("text", "csv", "json", "markdown"), default="text")

    p = sub.add_parser("compare", help="CS, GA and PSO side by side")
    p.add_argument("--function", action="append", default=None,
                   help="function name; repeat for several (default: all nine)")
    p.add_argument("--dim", type=int, default=None, help="dimension for every function")
    p.add_argument("--algo", type=_csv_list(str), default=["cs", "ga", "pso"],
                   help="comma-separated algorithms (default cs,ga,pso)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--max-evals", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-5)
    _add_cs_flags(p)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json", "markdown"), default="markdown")

    p = sub.add_parser("sweep", help="grid over nest count and abandonment fraction")
    _add_common(p)
    p.add_argument("--grid-n", type=_csv_list(int), default=list(DEFAULT_GRID_N))
    p.add_argument("--grid-pa", type=_csv_list(float), default=list(DEFAULT_GRID_PA))
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=2.5)
    p.add_argument("--format", choices=("text", "csv", "json", "markdown"), default="text")

    p = sub.add_parser("list-functions", help="the benchmark catalog")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _seed(args, out):
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    out.append(f"seed: {seed}")
    return seed


def _cs_config(args):
    return {"n_nests": args.nests, "p_a": args.pa, "alpha": args.alpha, "lam": args.lam}


def _algo_config(algo, args):
    return _cs_config(args) if algo == "cs" else {}


def _emit(text, args):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args):
    bench = get_function(args.function)
    dim = bench.check_dim(bench.default_dim if args.dim is None else args.dim)
    lines = []
    seed = _seed(args, lines)
    est = harness.get_algorithm(args.algo)()
    est.set_params(**_algo_config(args.algo, args), seed=seed, max_evals=args.max_evals, tol=args.tol)
    est.config()
    try:
        target = bench.optimum(dim).value
    except InvalidParameterError:
        target = None
    result = est.minimize(bench, bench.space(dim), known_optimum=target)
    if args.trace:
        harness.write_trace(result, args.trace)
    if args.format == "json":
        payload = {
            "seed": seed,
            "algorithm": args.algo,
            "function": bench.name,
            "dim": dim,
            "best_value": result.best.value,
            "best_position": result.best.position.tolist(),
            "evals_used": result.evals_used,
            "generations": result.generations,
            "success": result.success,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args)
        return
    lines += [
        f"algorithm: {args.algo}",
        f"function: {bench.name} (d={dim})",
        f"best_value: {result.best.value!r}",
        f"evals_used: {result.evals_used}",
        f"generations: {result.generations}",
        f"success: {str(result.success).lower()}",
        "best_position: " + " ".join(repr(float(v)) for v in result.best.position),
    ]
    _emit("\n".join(lines) + "\n", args)


def _report(results, args, header):
    if args.format == "text":
        lines = header + [
            f"{s.algorithm} {s.function} d={s.dim} n={s.n_or_pop}"
            + ("" if s.p_a is None else f" p_a={s.p_a:g}")
            + f": {harness.format_summary(s)}"
            for s in results
        ]
        _emit("\n".join(lines) + "\n", args)
    else:
        text = harness.render(results, args.format)
        if args.format == "markdown":
            text = "\n".join(f"<!-- {h} -->" for h in header) + "\n" + text
        else:
            # Keep CSV/JSON parseable; the seed is also in every row.
            print("\n".join(header), file=sys.stderr)
        _emit(text, args)


def _cmd_bench(args):
    header = []
    seed = _seed(args, header)
    spec = ExperimentSpec(
        args.algo, args.function, args.dim, _algo_config(args.algo, args),
        trials=args.runs, master_seed=seed, epsilon=args.tol, max_evals=args.max_evals,
    )
    _report([harness.run_trials(spec)], args, header)


def _cmd_compare(args):
    functions = args.function or list(CATALOG)
    for name in functions:
        get_function(name)
    for algo in args.algo:
        harness.get_algorithm(algo)
    header = []
    seed = _seed(args, header)
    specs = [
        ExperimentSpec(
            algo, fn, args.dim, _algo_config(algo, args),
            trials=args.runs, master_seed=seed, epsilon=args.tol, max_evals=args.max_evals,
        )
        for fn in functions
        for algo in args.algo
    ]
    _report([harness.run_trials(s) for s in specs], args, header)


def _cmd_sweep(args):
    header = []
    seed = _seed(args, header)
    base = {"alpha": args.alpha, "lam": args.lam}
    specs = [
        ExperimentSpec(
            "cs", args.function, args.dim, {**base, "n_nests": n, "p_a": pa},
            trials=args.runs, master_seed=seed, epsilon=args.tol, max_evals=args.max_evals,
        )
        for n in args.grid_n
        for pa in args.grid_pa
    ]
    if not specs:
        raise InvalidParameterError("parameter grids must be non-empty")
    _report([harness.run_trials(s) for s in specs], args, header)


def _cmd_list(args):
    rows = catalog_records()
    if args.format == "json":
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
        return
    for row in rows:
        f = CATALOG[row["name"]]
        power = f.fixed_dim if f.fixed_dim else "d"
        domain = f"[{f.lower:g}, {f.upper:g}]^{power}"
        best = "n/a" if row["known_best_value"] is None else f"{row['known_best_value']:.6g}"
        sys.stdout.write(f"{row['name']:<12} {row['dim_rule']:<9} {domain:<26} d={f.default_dim:<4} f*={best}\n")


_COMMANDS = {
    "run": _cmd_run,
    "bench": _cmd_bench,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "list-functions": _cmd_list,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    try:
        _COMMANDS[args.command](args)
    except NotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvalidParameterError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
