"""Command-line interface.

Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 bad input (files, flags, graph data), 2 numerical failure (singular
system, divergent series, refused underflow-prone combination).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from clusterkit import bench as bench_mod
from clusterkit import closure as closure_mod
from clusterkit import io as io_mod
from clusterkit.errors import InputError, NumericalError
from clusterkit.graphs import graph_to_adjacency
from clusterkit.linalg import Matrix


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; the contract wants 1 for input errors
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="clusterkit", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", parser_class=_Parser)

    comp = sub.add_parser("components", help="cluster size per node")
    comp.add_argument("--input", required=True, help="edge-list file")
    comp.add_argument(
        "--engine",
        default="fundamental",
        choices=("fundamental", "power_sum", "oracle"),
    )
    comp.add_argument("--backend", default="exact", choices=("exact", "float"))
    comp.add_argument(
        "--variant",
        default=closure_mod.VARIANT_GEOMETRIC,
        choices=closure_mod.VARIANTS,
    )
    comp.add_argument(
        "--threshold",
        type=float,
        default=closure_mod.DEFAULT_NONZERO_THRESHOLD,
        help="float backend: entries above this count as nonzero",
    )
    comp.add_argument("--format", default="json", choices=("json", "table"))

    within = sub.add_parser(
        "within-n", help="cluster size within n steps"
    )
    within.add_argument("--input", required=True)
    within.add_argument("--n", required=True, type=int)
    within.add_argument("--node", type=int, default=None, help="default: all nodes")
    within.add_argument("--format", default="json", choices=("json", "table"))

    markov = sub.add_parser(
        "markov", help="expected steps to absorption"
    )
    markov.add_argument("--matrix", required=True, help="coordinate-format file")
    markov.add_argument("--backend", default="exact", choices=("exact", "float"))
    markov.add_argument("--format", default="json", choices=("json", "table"))

    bench = sub.add_parser(
        "bench", help="engine timing table (CSV)"
    )
    bench.add_argument("--sizes", required=True, help="comma-separated node counts")
    bench.add_argument("--densities", required=True, help="comma-separated p values")
    bench.add_argument(
        "--seed", required=True, type=int, action="append", help="repeatable"
    )
    bench.add_argument(
        "--engines",
        default="oracle,fundamental_float_uniform",
        help=f"comma-separated subset of {bench_mod.ENGINE_NAMES}",
    )
    bench.add_argument("--repetitions", type=int, default=1)

    closure = sub.add_parser(
        "closure", help="reachability pattern as 0/1 rows"
    )
    closure.add_argument("--input", required=True)
    return parser


def _load_adjacency(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        graph = io_mod.parse_edge_list(handle)
    return graph_to_adjacency(graph)


def _print_json(payload) -> None:
    print(json.dumps(payload))


def _cmd_components(args) -> int:
    s = _load_adjacency(args.input)
    if args.engine == "fundamental":
        report = closure_mod.cluster_sizes_fundamental(
            s, args.variant, args.backend, args.threshold
        )
        variant = args.variant
    elif args.engine == "oracle":
        report = closure_mod.cluster_sizes_oracle(s)
        variant = None
    else:
        report = closure_mod.cluster_sizes_power_sum(s)
        variant = None
    if args.format == "json":
        _print_json(
            {
                "engine": report.engine,
                "backend": report.backend,
                "variant": variant,
                "sizes": list(report.sizes),
            }
        )
    else:
        print(f"{'node':>6} {'size':>6}")
        for node, size in enumerate(report.sizes):
            print(f"{node:>6} {size:>6}")
    return 0


def _cmd_within_n(args) -> int:
    s = _load_adjacency(args.input)
    if args.node is not None:
        size = closure_mod.cluster_size_within_n(s, args.node, args.n)
        if args.format == "json":
            _print_json(
                {
                    "engine": "power_sum",
                    "backend": "boolean",
                    "n": args.n,
                    "node": args.node,
                    "size": size,
                }
            )
        else:
            print(f"{'node':>6} {'size':>6}")
            print(f"{args.node:>6} {size:>6}")
        return 0
    report = closure_mod.cluster_sizes_power_sum(s, args.n)
    if args.format == "json":
        _print_json(
            {
                "engine": report.engine,
                "backend": report.backend,
                "n": args.n,
                "sizes": list(report.sizes),
            }
        )
    else:
        print(f"{'node':>6} {'size':>6}")
        for node, size in enumerate(report.sizes):
            print(f"{node:>6} {size:>6}")
    return 0


def _exact_step(value: Fraction):
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _cmd_markov(args) -> int:
    with open(args.matrix, "r", encoding="utf-8") as handle:
        q = io_mod.parse_matrix_market(handle)
    if args.backend == "float":
        arr = [[float(v) for v in row] for row in q.matrix.fraction_rows]
        q = closure_mod.WeightMatrix(Matrix.from_array(arr), variant=None)
        steps = [float(t) for t in closure_mod.expected_absorption_steps(q)]
        rendered = steps
    else:
        steps = closure_mod.expected_absorption_steps(q)
        rendered = [_exact_step(t) for t in steps]
    if args.format == "json":
        _print_json({"backend": args.backend, "steps": rendered})
    else:
        print(f"{'state':>6} {'steps':>12}")
        for state, t in enumerate(steps):
            print(f"{state:>6} {str(t):>12}")
    return 0


def _parse_csv_list(text: str, cast, flag: str):
    items = [tok for tok in text.split(",") if tok.strip()]
    if not items:
        raise _UsageError(f"{flag} must be a nonempty comma-separated list")
    try:
        return tuple(cast(tok.strip()) for tok in items)
    except ValueError:
        raise _UsageError(f"bad value in {flag}: {text!r}") from None


def _cmd_bench(args) -> int:
    spec = bench_mod.BenchSpec(
        sizes=_parse_csv_list(args.sizes, int, "--sizes"),
        densities=_parse_csv_list(args.densities, float, "--densities"),
        seeds=tuple(args.seed),
        engines=_parse_csv_list(args.engines, str, "--engines"),
        repetitions=args.repetitions,
    )
    records = bench_mod.run_benchmark(spec)
    sys.stdout.write(bench_mod.emit_report(records, "csv"))
    return 0


def _cmd_closure(args) -> int:
    s = _load_adjacency(args.input)
    pattern = closure_mod.reflexive_transitive_closure(s)
    for row in pattern.bool_rows:
        print("".join("1" if (row >> j) & 1 else "0" for j in range(s.k)))
    return 0


_COMMANDS = {
    "components": _cmd_components,
    "within-n": _cmd_within_n,
    "markov": _cmd_markov,
    "bench": _cmd_bench,
    "closure": _cmd_closure,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand is None:
            parser.print_usage(sys.stderr)
            print("error: a subcommand is required", file=sys.stderr)
            return 1
        return _COMMANDS[args.subcommand](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
