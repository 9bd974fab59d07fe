"""``ubg`` command line entry point.

Exit codes: 0 success, 1 domain or validation error (including bad flags),
2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys
import time
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from . import baseline, benchmark, logio
from .model import LogValidationError, UncertainLog, validate_log
from .realizations import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_EVENTS,
    EnumerationLimitError,
    order_realizations,
    realizations,
)
from .synthgen import GenSpec, generate, worst_case_trace
from .udfg import FilterPolicy, filter_udfg, udfg
from .variants import REPORT_COLUMNS, process_log, report_rows

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

SWEEPS = ("n", "l", "p", "memory")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    raw = os.environ.get("UBG_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _read(args: argparse.Namespace) -> UncertainLog:
    return logio.read_log(args.input, args.format)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    log = _read(args)
    print(f"ok: {len(log)} traces, {log.num_events} events")
    return EXIT_OK


def _report_csv(rows) -> str:
    lines = [",".join(REPORT_COLUMNS)]
    lines.extend(",".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_build(args: argparse.Namespace) -> int:
    log = _read(args)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    variants = process_log(log, threads=args.threads)
    if args.algorithm == "baseline":
        by_case = {t.case_id: t for t in log.traces}
        graphs = [baseline.build(by_case[v.case_ids[0]]) for v in variants]
    else:
        graphs = [v.graph for v in variants]
    elapsed = time.perf_counter() - start
    for i, g in enumerate(graphs, start=1):
        (out / f"variant_{i:04d}.dot").write_text(logio.write_dot(g, name=f"variant_{i:04d}"), encoding="utf-8")
    rows = [(i, v.multiplicity, g.num_nodes, g.num_edges) for i, (v, g) in enumerate(zip(variants, graphs), 1)]
    (out / "variants.csv").write_text(_report_csv(rows), encoding="utf-8")
    total_edges = sum(g.num_edges for g in graphs)
    print(
        f"traces={len(log)} variants={len(variants)} edges={total_edges} "
        f"algorithm={args.algorithm} elapsed={elapsed:.6f}s"
    )
    return EXIT_OK


def cmd_variants(args: argparse.Namespace) -> int:
    variants = process_log(_read(args), threads=args.threads)
    _write_text(args.output, _report_csv(report_rows(variants)))
    return EXIT_OK


def cmd_realizations(args: argparse.Namespace) -> int:
    log = _read(args)
    traces = [t for t in log if args.case is None or t.case_id == args.case]
    if args.case is not None and not traces:
        raise UsageError(f"no case {args.case!r} in {args.input}")
    lines = []
    for t in traces:
        if args.orders:
            found = sorted(order_realizations(t, args.max_events))
        else:
            found = sorted(realizations(t, args.max_events, args.budget))
        lines.append(f"# case {t.case_id}: {len(found)}")
        lines.extend(",".join(seq) for seq in found)
    _write_text(args.output, "\n".join(lines) + "\n" if lines else "")
    return EXIT_OK


def cmd_udfg(args: argparse.Namespace) -> int:
    graph = udfg(_read(args), args.max_events, args.budget, strict=False)
    for case_id in graph.skipped:
        print(f"skipped case {case_id}: over enumeration limits", file=sys.stderr)
    if args.min_filter is not None:
        graph = filter_udfg(graph, args.min_filter, args.policy)
    import io

    buf = io.StringIO()
    logio.write_udfg_csv(graph, buf)
    if args.output:
        Path(f"{args.output}.csv").write_text(buf.getvalue(), encoding="utf-8")
        Path(f"{args.output}.dot").write_text(logio.write_udfg_dot(graph), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_DOMAIN if graph.skipped else EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    if args.worst_case is not None:
        if args.worst_case < 1:
            raise UsageError("--worst-case must be at least 1")
        log = UncertainLog((worst_case_trace(args.worst_case),))
        summary = f"worst_case k={args.worst_case}"
    else:
        seed = args.seed if args.seed is not None else secrets.randbelow(2**32)
        try:
            spec = GenSpec(
                n=args.n, l=args.l, p=args.p, p_act=args.p_act, p_indet=args.p_indet,
                alphabet_size=args.alphabet_size, seed=seed,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        log = generate(spec)
        summary = (
            f"n={spec.n} l={spec.l} p={spec.p} p_act={spec.p_act} p_indet={spec.p_indet} "
            f"alphabet_size={spec.alphabet_size} seed={spec.seed}"
        )
    fmt = args.format or logio.infer_format(args.output)
    logio.write_log(log, args.output, fmt)
    print(summary)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    names = args.sweep or ["l"]
    unknown = [s for s in names if s not in SWEEPS + ("all",)]
    if unknown:
        raise UsageError(f"unknown sweep(s): {', '.join(unknown)} (choose from {', '.join(SWEEPS)}, all)")
    if "all" in names:
        names = list(SWEEPS)
    results = []
    checks: List[benchmark.TrendCheck] = []
    footer: List[str] = []
    for name in names:
        if name == "n":
            rs = benchmark.sweep_n(args.n_values or [1000, 2000, 4000], reps=args.reps, seed=args.seed)
            checks += benchmark.check_sweep_n(rs)
        elif name == "l":
            rs = benchmark.sweep_l(args.l_values or [50, 100, 200, 400], reps=args.reps, seed=args.seed)
            xs = [r.value for r in rs]
            footer.append(
                "slope baseline={:.4f} improved={:.4f}".format(
                    benchmark.loglog_slope(xs, [r.baseline_min for r in rs]),
                    benchmark.loglog_slope(xs, [r.improved_min for r in rs]),
                )
            )
            checks += benchmark.check_sweep_l(rs)
        elif name == "p":
            p_values = args.p_values or [i / 10 for i in range(11)]
            if args.input:
                rs = benchmark.sweep_p_log(_read(args), p_values, reps=args.reps, seed=args.seed)
            else:
                rs = benchmark.sweep_p(p_values, reps=args.reps, seed=args.seed)
            checks += benchmark.check_sweep_p(rs)
        else:
            rows = benchmark.memory_report(args.memory_n_values or [100, 1000, 5000, 10000], seed=args.seed)
            for r in rows:
                footer.append(
                    f"memory n={r.n} naive_bytes={r.naive_bytes} dedup_bytes={r.dedup_bytes} fraction={r.fraction:.4f}"
                )
            checks += benchmark.check_memory(rows)
            rs = []
        results.extend(rs)
    footer.extend(str(c) for c in checks)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            benchmark.write_results_csv(results, fh, footer)
    else:
        benchmark.write_results_csv(results, sys.stdout, footer)
    for c in checks:
        print(c, file=sys.stderr)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_DOMAIN


def cmd_export_dot(args: argparse.Namespace) -> int:
    log = _read(args)
    if not len(log):
        raise UsageError(f"{args.input} contains no traces")
    case = args.case if args.case is not None else log.traces[0].case_id
    matches = [t for t in log if t.case_id == case]
    if not matches:
        raise UsageError(f"no case {case!r} in {args.input}")
    from .sweep import build

    _write_text(args.output, logio.write_dot(build(matches[0])))
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    if required:
        p.add_argument("input", help="log file (.csv or .jsonl)")
    else:
        p.add_argument("--input", help="log file (.csv or .jsonl)")
    p.add_argument("--format", choices=("csv", "jsonl"), help="log format (default: from file extension)")


def _add_limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-events", type=int, default=DEFAULT_MAX_EVENTS, help="largest trace to enumerate")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest realization count to enumerate")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ubg", description="Behavior graphs of uncertain event logs.")
    parser.add_argument(
        "--threads", type=int, default=_default_threads(),
        help="worker processes for per-trace work (default: $UBG_THREADS or 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a log against the model invariants")
    _add_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="write one DOT file per variant plus a variant report")
    _add_input(p)
    p.add_argument("-o", "--output-dir", required=True, help="directory for variant_NNNN.dot and variants.csv")
    p.add_argument("--algorithm", choices=("sweep", "baseline"), default="sweep", help="graph construction method")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("variants", help="variant report as CSV")
    _add_input(p)
    p.add_argument("-o", "--output", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_variants)

    p = sub.add_parser("realizations", help="list realizations or order-realizations of traces")
    _add_input(p)
    p.add_argument("--case", help="only this case_id")
    p.add_argument("--orders", action="store_true", help="list event orders instead of activity sequences")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    _add_limits(p)
    p.set_defaults(func=cmd_realizations)

    p = sub.add_parser("udfg", help="uncertain directly-follows graph as CSV and DOT")
    _add_input(p)
    p.add_argument("-o", "--output", help="output path prefix; writes PREFIX.csv and PREFIX.dot (default: CSV on stdout)")
    p.add_argument("--min-filter", type=int, help="drop edges whose selected bound is below this value")
    p.add_argument("--policy", choices=[x.value for x in FilterPolicy], default="by_max", help="bound used by --min-filter")
    _add_limits(p)
    p.set_defaults(func=cmd_udfg)

    p = sub.add_parser("generate", help="write a synthetic uncertain log")
    p.add_argument("-o", "--output", required=True, help="output log file")
    p.add_argument("--format", choices=("csv", "jsonl"), help="log format (default: from file extension)")
    p.add_argument("--n", type=int, default=100, help="number of traces")
    p.add_argument("--l", type=int, default=20, help="events per trace")
    p.add_argument("--p", type=float, default=0.5, help="fraction of events with an uncertain timestamp")
    p.add_argument("--p-act", type=float, default=0.0, help="fraction of events with two candidate activities")
    p.add_argument("--p-indet", type=float, default=0.0, help="fraction of indeterminate events")
    p.add_argument("--alphabet-size", type=int, default=10, help="number of distinct activity labels")
    p.add_argument("--seed", type=int, help="random seed (default: drawn and printed)")
    p.add_argument("--worst-case", type=int, metavar="K", help="write the single 2K-event complete-bipartite trace instead")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="timing sweeps; exit code reflects the trend checks")
    p.add_argument("--sweep", action="append", help="n, l, p, memory or all (repeatable; default l)")
    p.add_argument("--reps", type=int, default=3, help="repetitions per data point")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--n-values", type=_int_list, help="comma-separated trace counts for the n sweep")
    p.add_argument("--l-values", type=_int_list, help="comma-separated trace lengths for the l sweep")
    p.add_argument("--p-values", type=_float_list, help="comma-separated fractions for the p sweep")
    p.add_argument("--memory-n-values", type=_int_list, help="comma-separated trace counts for the memory report")
    p.add_argument("-o", "--output", help="output CSV (default: stdout)")
    _add_input(p, required=False)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-dot", help="DOT of a single trace's behavior graph")
    _add_input(p)
    p.add_argument("--case", help="case_id to export (default: first case)")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        return func(args)
    except (FileNotFoundError, PermissionError, IsADirectoryError, NotADirectoryError) as exc:
        print(f"ubg: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (logio.LogParseError, LogValidationError, EnumerationLimitError, UsageError, ValueError) as exc:
        print(f"ubg: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"ubg: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
