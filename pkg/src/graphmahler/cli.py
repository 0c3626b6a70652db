"""Command-line interface.

One binary with subcommands; configuration is flags only, so identical
invocations are bit-for-bit reproducible.  Exit codes: 0 success, 2 input
error, 3 size refusal, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InputError, InternalInconsistencyError, SizeRefusalError
from .graphs import (
    PeriodicGraph,
    grid_graph,
    laplacian_polynomial,
    parse_graph,
    serialize_graph,
)
from .intmat import bareiss_determinant
from .laurent import LaurentPoly, parse_poly
from .lehmer import (
    palindrome_decompose,
    realize_periodic_graph,
    search_results_csv,
    search_small_measure,
)
from .mahler import mahler_measure
from .oracles import crsf_polynomial, spanning_tree_sum
from .quotients import (
    ComplexityReport,
    LatticeSpec,
    complexity,
    cyclic_family,
    growth_series,
    growth_series_csv,
    quotient_graph,
    scaled_family,
)

_DEFAULT_R_MAX = 64
_DEFAULT_N_MAX = 16


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write output file {out}: {exc}") from None


def _load_graph(path: str) -> PeriodicGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from None
    return parse_graph(text)


def _input_poly(args) -> LaurentPoly:
    if getattr(args, "poly", None):
        return parse_poly(args.poly, dim=getattr(args, "dim", None))
    if getattr(args, "input", None):
        return laplacian_polynomial(_load_graph(args.input))
    raise InputError("need --poly or --input")


def _lattice_from_args(graph: PeriodicGraph, args) -> LatticeSpec:
    if getattr(args, "lattice", None):
        try:
            rows = [
                [int(x) for x in row.split(",")] for row in args.lattice.split(";")
            ]
        except ValueError:
            raise InputError(f"bad lattice spec {args.lattice!r}") from None
        return LatticeSpec.from_rows(rows)
    if getattr(args, "r", None) is not None:
        if graph.dim != 1:
            raise InputError("--r applies to 1-periodic graphs only")
        return LatticeSpec.cyclic(args.r)
    if getattr(args, "N", None) is not None:
        return LatticeSpec.scaled(args.N, graph.dim)
    raise InputError("periodic graph needs a quotient: give --r, --N or --lattice")


def _format_complexity(report: ComplexityReport) -> str:
    factors = ",".join(str(d) for d in report.invariant_factors)
    return (
        f"kappa = {report.kappa}\n"
        f"tau = {report.tau}\n"
        f"nullity = {report.nullity}\n"
        f"invariant_factors = [{factors}]\n"
    )


def _cmd_poly(args) -> int:
    graph = _load_graph(args.input)
    _write_output(f"{laplacian_polynomial(graph)}\n", args.out)
    return 0


def _complexity_report(args) -> ComplexityReport:
    graph = _load_graph(args.input)
    if graph.dim == 0:
        return complexity(graph)
    return complexity(quotient_graph(graph, _lattice_from_args(graph, args)))


def _cmd_kappa(args) -> int:
    _write_output(_format_complexity(_complexity_report(args)), args.out)
    return 0


def _cmd_growth(args) -> int:
    graph = _load_graph(args.input)
    if graph.dim == 0:
        raise InputError("growth series needs a periodic graph (dim >= 1)")
    if graph.dim == 1 and args.N_min is None and args.N_max is None:
        r_min = args.r_min if args.r_min is not None else 1
        r_max = args.r_max if args.r_max is not None else _DEFAULT_R_MAX
        family = cyclic_family(r_min, r_max)
    else:
        n_min = args.N_min if args.N_min is not None else 1
        n_max = args.N_max if args.N_max is not None else _DEFAULT_N_MAX
        family = scaled_family(n_min, n_max, graph.dim)
    series = growth_series(graph, family)
    d_poly = laplacian_polynomial(graph)
    if d_poly.is_zero():
        raise InputError("Laplacian polynomial is zero; no growth comparison possible")
    measure = mahler_measure(d_poly, grid_size=args.grid)
    comments = [
        f"graph: {args.input}",
        f"laplacian_polynomial: {d_poly}",
        f"log_mahler: {measure.log_value:.12g} (method {measure.method}, "
        f"error {measure.error_estimate:.3g})",
    ]
    if series.entries:
        gap = abs(series.entries[-1].normalized_rate - measure.log_value)
        comments.append(f"last_entry_gap: {gap:.12g}")
        if args.tolerance is not None:
            verdict = "within" if gap <= args.tolerance else "outside"
            comments.append(f"tolerance_check: {verdict} {args.tolerance:g}")
    if args.format == "text":
        lines = [f"# {c}" for c in comments]
        for e in series.entries:
            lines.append(
                f"{e.lattice:>12}  index={e.index:<6} log_kappa={e.log_kappa:.12g}  "
                f"rate={e.normalized_rate:.12g}"
            )
        _write_output("\n".join(lines) + "\n", args.out)
    else:
        _write_output(growth_series_csv(series, comments), args.out)
    if args.plot:
        from .plots import render_growth_plot

        render_growth_plot(series, measure.log_value, args.plot,
                           title=f"growth of {Path(args.input).name}")
    return 0


def _cmd_mahler(args) -> int:
    f = _input_poly(args)
    result = mahler_measure(f, method=args.method, grid_size=args.grid)
    text = (
        f"polynomial = {f}\n"
        f"value = {result.value:.12g}\n"
        f"log_value = {result.log_value:.12g}\n"
        f"method = {result.method}\n"
        f"error_estimate = {result.error_estimate:.3g}\n"
    )
    if result.method == "torus-quadrature":
        text += f"dropped_samples = {result.diagnostics.get('dropped', 0)}\n"
    _write_output(text, args.out)
    return 0


def _cmd_realize(args) -> int:
    p = parse_poly(args.poly, dim=1)
    graph = realize_periodic_graph(palindrome_decompose(p))
    _write_output(serialize_graph(graph), args.out)
    return 0


def _cmd_grid(args) -> int:
    _write_output(serialize_graph(grid_graph(args.dim)), args.out)
    return 0


def _cmd_search(args) -> int:
    try:
        weights = [int(w) for w in args.weights.split(",")]
    except ValueError:
        raise InputError(f"bad weight set {args.weights!r}") from None
    hits = search_small_measure(args.max_edges, args.max_winding, weights)
    comments = [
        f"max_edges={args.max_edges} max_winding={args.max_winding} "
        f"weights={sorted(set(weights))}",
        f"hits: {len(hits)} (measure-one results filtered out)",
    ]
    _write_output(search_results_csv(hits, comments), args.out)
    if args.plot:
        from .plots import render_search_plot

        render_search_plot(hits, args.plot)
    return 0


def _cmd_oracle_check(args) -> int:
    graph = _load_graph(args.input)
    lines = []
    if graph.dim >= 1:
        d_poly = laplacian_polynomial(graph)
        crsf = crsf_polynomial(graph)
        if crsf != d_poly and crsf != -d_poly:
            raise InternalInconsistencyError(
                f"CRSF polynomial {crsf} differs from det {d_poly}"
            )
        lines.append("CRSF = det: OK")
        finite = quotient_graph(
            graph,
            LatticeSpec.cyclic(3) if graph.dim == 1 else LatticeSpec.scaled(2, graph.dim),
        ).graph
    else:
        finite = graph
    from .graphs import component_orbits, integer_laplacian

    info = component_orbits(finite)
    if len(info.component_vertex_sets) == 1:
        trees = spanning_tree_sum(finite)
        lap = integer_laplacian(finite)
        idx = list(range(finite.n_orbits - 1))
        minor = abs(bareiss_determinant([[lap[i][j] for j in idx] for i in idx]))
        if trees != minor:
            raise InternalInconsistencyError(
                f"spanning tree sum {trees} differs from Laplacian minor {minor}"
            )
        lines.append("trees = minor: OK")
    else:
        lines.append("trees = minor: skipped (quotient not connected)")
    _write_output("; ".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphmahler",
        description="Complexity invariants of periodic weighted graphs and "
        "Mahler measures of their Laplacian polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, graph_input=False, poly_input=False):
        if graph_input:
            p.add_argument("--input", help="graph file (JSON)")
        if poly_input:
            p.add_argument("--poly", help="inline polynomial, e.g. '2 - x - x^-1'")
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("poly", help="print the Laplacian determinant polynomial")
    add_common(p, graph_input=True)
    p.set_defaults(func=_cmd_poly)

    for name in ("kappa", "tau"):
        p = sub.add_parser(
            name, help="complexity report of a finite graph or a quotient"
        )
        add_common(p, graph_input=True)
        p.add_argument("--r", type=int, help="cyclic quotient order (d=1)")
        p.add_argument("--N", type=int, help="quotient by N*Z^d")
        p.add_argument("--lattice", help="basis rows, e.g. '2,0;0,2'")
        p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("growth", help="growth series vs. log Mahler measure")
    add_common(p, graph_input=True)
    p.add_argument("--r-min", type=int, dest="r_min")
    p.add_argument("--r-max", type=int, dest="r_max")
    p.add_argument("--N-min", type=int, dest="N_min")
    p.add_argument("--N-max", type=int, dest="N_max")
    p.add_argument("--grid", type=int, default=512, help="quadrature grid size")
    p.add_argument("--tolerance", type=float, help="compare last entry to log M")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--plot", help="render a PNG figure to this path")
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("mahler", help="Mahler measure of a polynomial or graph")
    add_common(p, graph_input=True, poly_input=True)
    p.add_argument("--method", choices=("jensen", "quadrature"))
    p.add_argument("--N", "--grid", type=int, default=512, dest="grid",
                   help="quadrature grid size")
    p.add_argument("--dim", type=int, help="ambient dimension for --poly")
    p.set_defaults(func=_cmd_mahler)

    p = sub.add_parser("realize", help="realize a palindromic polynomial as a graph")
    p.add_argument("--poly", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("grid", help="emit the d-dimensional grid graph")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("search", help="exhaustive small Mahler measure search")
    p.add_argument("--max-edges", type=int, required=True, dest="max_edges")
    p.add_argument("--max-winding", type=int, required=True, dest="max_winding")
    p.add_argument("--weights", default="1,-1", help="comma-separated weight set")
    p.add_argument("--out")
    p.add_argument("--plot", help="render a PNG figure to this path")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("oracle-check", help="run brute-force oracles vs. the pipeline")
    add_common(p, graph_input=True)
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeRefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
