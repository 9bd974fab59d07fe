"""Timing harness comparing the sweep builder with the reduction baseline.

Each measurement builds every trace of a generated log with both builders
and repeats the run ``reps`` times.  Means are reported; the per-run minimum
is kept as well and is what the trend checks use, since it is far less
sensitive to scheduler noise.  Log generation is never inside the timed
region, and both builders' outputs are compared on every run.
"""

from __future__ import annotations

import csv
import gc
import time
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from . import baseline, sweep
from .model import UncertainLog
from .synthgen import GenSpec, generate, inject_uncertainty
from .variants import process_log, variant_stats

__all__ = [
    "BenchResult",
    "MemoryRow",
    "TrendCheck",
    "BuilderMismatch",
    "time_log",
    "sweep_n",
    "sweep_l",
    "sweep_p",
    "sweep_p_log",
    "memory_report",
    "loglog_slope",
    "check_sweep_n",
    "check_sweep_l",
    "check_sweep_p",
    "check_memory",
    "write_results_csv",
    "parallel_throughput",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("sweep", "param", "value", "baseline_s", "improved_s", "ratio")


class BuilderMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class BenchResult:
    sweep: str
    param: str
    value: float
    baseline_seconds: float
    improved_seconds: float
    baseline_min: float
    improved_min: float
    repetitions: int

    @property
    def ratio(self) -> float:
        return self.improved_seconds / self.baseline_seconds if self.baseline_seconds > 0 else float("nan")

    @property
    def ratio_min(self) -> float:
        return self.improved_min / self.baseline_min if self.baseline_min > 0 else float("nan")


@dataclass(frozen=True)
class MemoryRow:
    n: int
    naive_bytes: int
    dedup_bytes: int
    variant_count: int

    @property
    def fraction(self) -> float:
        return self.dedup_bytes / self.naive_bytes if self.naive_bytes else 1.0


@dataclass(frozen=True)
class TrendCheck:
    name: str
    passed: bool
    detail: str

    def __str__(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _timed(fn: Callable[[], object]) -> Tuple[float, object]:
    gc.collect()
    enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        out = fn()
        return time.perf_counter() - start, out
    finally:
        if enabled:
            gc.enable()


def time_log(log: UncertainLog, reps: int) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """``((baseline_mean, improved_mean), (baseline_min, improved_min))`` over ``reps`` runs.

    :raises BuilderMismatch: if the builders disagree on any trace
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    traces = log.traces
    base_times: List[float] = []
    fast_times: List[float] = []
    for _ in range(reps):
        tb, slow = _timed(lambda: [baseline.build(t) for t in traces])
        tf, fast = _timed(lambda: [sweep.build(t) for t in traces])
        for t, a, b in zip(traces, slow, fast):  # type: ignore[call-overload]
            if a != b:
                raise BuilderMismatch(f"builders disagree on case {t.case_id!r}")
        base_times.append(tb)
        fast_times.append(tf)
    return (
        (float(np.mean(base_times)), float(np.mean(fast_times))),
        (min(base_times), min(fast_times)),
    )


def _result(name: str, param: str, value: float, log: UncertainLog, reps: int) -> BenchResult:
    (bm, fm), (bmin, fmin) = time_log(log, reps)
    return BenchResult(name, param, value, bm, fm, bmin, fmin, reps)


def sweep_n(
    n_values: Iterable[int], l: int = 20, p: float = 0.5, reps: int = 3, seed: int = 0
) -> List[BenchResult]:
    """Scaling in the number of traces."""
    return [_result("sweep_n", "n", n, generate(GenSpec(n=n, l=l, p=p, seed=seed)), reps) for n in n_values]


def sweep_l(
    l_values: Iterable[int], n: int = 100, p: float = 0.5, reps: int = 3, seed: int = 0
) -> List[BenchResult]:
    """Scaling in the trace length; see :func:`loglog_slope` for the exponents."""
    return [_result("sweep_l", "l", l, generate(GenSpec(n=n, l=l, p=p, seed=seed)), reps) for l in l_values]


def sweep_p(
    p_values: Iterable[float] = tuple(i / 10 for i in range(11)),
    n: int = 100,
    l: int = 100,
    reps: int = 3,
    seed: int = 0,
) -> List[BenchResult]:
    """Scaling in the fraction of events with an uncertain timestamp."""
    return [_result("sweep_p", "p", p, generate(GenSpec(n=n, l=l, p=p, seed=seed)), reps) for p in p_values]


def sweep_p_log(
    log: UncertainLog,
    p_values: Iterable[float] = tuple(i / 10 for i in range(11)),
    reps: int = 3,
    seed: int = 0,
) -> List[BenchResult]:
    """Same as :func:`sweep_p` on a user-supplied log with injected uncertainty."""
    return [_result("sweep_p_log", "p", p, inject_uncertainty(log, p, seed), reps) for p in p_values]


def memory_report(
    n_values: Iterable[int], l: int = 10, p: float = 0.5, alphabet_size: int = 1, seed: int = 0
) -> List[MemoryRow]:
    """Bytes needed for one graph per trace versus one graph per variant."""
    rows = []
    for n in n_values:
        stats = variant_stats(process_log(generate(GenSpec(n=n, l=l, p=p, alphabet_size=alphabet_size, seed=seed))))
        rows.append(MemoryRow(n, stats.graphs_bytes_naive, stats.graphs_bytes_deduplicated, stats.variant_count))
    return rows


def parallel_throughput(log: UncertainLog, threads: int) -> float:
    """Wall-clock seconds of :func:`ubg.variants.process_log` with a worker pool."""
    seconds, _ = _timed(lambda: process_log(log, threads=threads))
    return seconds


def loglog_slope(xs: Sequence[float], ys: Sequence[float], upper_half: bool = True) -> float:
    """Least-squares slope of ``log(y)`` against ``log(x)``.

    With ``upper_half`` only the larger half of the points (at least two)
    enters the fit, which is where the asymptotic term dominates.
    """
    pairs = sorted(zip(xs, ys))
    if upper_half:
        pairs = pairs[min(len(pairs) // 2, max(len(pairs) - 2, 0)):]
    if len(pairs) < 2:
        raise ValueError("need at least two points for a slope")
    x = np.log([a for a, _ in pairs])
    y = np.log([b for _, b in pairs])
    return float(np.polyfit(x, y, 1)[0])


def check_sweep_n(results: Sequence[BenchResult], max_ratio: float = 0.6) -> List[TrendCheck]:
    checks = []
    rs = sorted(results, key=lambda r: r.value)
    growth_ok = True
    worst = 0.0
    for a, b in zip(rs, rs[1:]):
        scale = b.value / a.value
        for ta, tb in ((a.baseline_min, b.baseline_min), (a.improved_min, b.improved_min)):
            if ta <= 0:
                continue
            # growth per doubling of n
            per_doubling = (tb / ta) ** (np.log(2) / np.log(scale))
            worst = max(worst, per_doubling)
            growth_ok &= per_doubling <= 2.5
    checks.append(TrendCheck("sweep_n linear growth", growth_ok, f"worst growth per doubling {worst:.2f} (<= 2.5)"))
    big = [r for r in rs if r.value >= 1000]
    ratio_ok = all(r.ratio_min < max_ratio for r in big)
    detail = ", ".join(f"n={int(r.value)}: {r.ratio_min:.3f}" for r in big) or "no n >= 1000"
    checks.append(TrendCheck(f"sweep_n ratio < {max_ratio}", ratio_ok, detail))
    return checks


def check_sweep_l(
    results: Sequence[BenchResult],
    baseline_range: Tuple[float, float] = (2.5, 3.5),
    improved_range: Tuple[float, float] = (1.5, 2.5),
) -> List[TrendCheck]:
    rs = sorted(results, key=lambda r: r.value)
    xs = [r.value for r in rs]
    sb = loglog_slope(xs, [r.baseline_min for r in rs])
    si = loglog_slope(xs, [r.improved_min for r in rs])
    ratios = [r.ratio_min for r in rs]
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    return [
        TrendCheck(
            "sweep_l baseline slope",
            baseline_range[0] <= sb <= baseline_range[1],
            f"{sb:.3f} in [{baseline_range[0]}, {baseline_range[1]}]",
        ),
        TrendCheck(
            "sweep_l improved slope",
            improved_range[0] <= si <= improved_range[1],
            f"{si:.3f} in [{improved_range[0]}, {improved_range[1]}]",
        ),
        TrendCheck(
            "sweep_l ratio strictly decreasing",
            decreasing,
            " > ".join(f"{r:.4f}" for r in ratios),
        ),
    ]


def check_sweep_p(results: Sequence[BenchResult], max_spread: float = 2.0) -> List[TrendCheck]:
    rs = sorted(results, key=lambda r: r.value)
    improved = [r.improved_min for r in rs]
    spread = max(improved) / min(improved)
    checks = [TrendCheck("sweep_p improved max/min", spread <= max_spread, f"{spread:.3f} <= {max_spread}")]
    first, last = rs[0], rs[-1]
    checks.append(
        TrendCheck(
            "sweep_p ratio grows from lowest to highest p",
            first.ratio_min < last.ratio_min,
            f"p={first.value}: {first.ratio_min:.4f}, p={last.value}: {last.ratio_min:.4f}",
        )
    )
    slowest = max(rs, key=lambda r: r.baseline_min)
    checks.append(
        TrendCheck(
            "sweep_p baseline slowest at lowest p",
            slowest is first,
            f"slowest baseline at p={slowest.value}",
        )
    )
    return checks


def check_memory(rows: Sequence[MemoryRow], large_n: int = 5000, large_fraction: float = 0.9) -> List[TrendCheck]:
    rows = sorted(rows, key=lambda r: r.n)
    fractions = [r.fraction for r in rows]
    return [
        TrendCheck("memory fraction <= 1", all(f <= 1.0 for f in fractions), ", ".join(f"{f:.3f}" for f in fractions)),
        TrendCheck(
            f"memory fraction <= {large_fraction} for n >= {large_n}",
            all(r.fraction <= large_fraction for r in rows if r.n >= large_n),
            ", ".join(f"n={r.n}: {r.fraction:.3f}" for r in rows if r.n >= large_n) or f"no n >= {large_n}",
        ),
        TrendCheck(
            "memory fraction non-increasing in n",
            all(b <= a for a, b in zip(fractions, fractions[1:])),
            " >= ".join(f"{f:.3f}" for f in fractions),
        ),
    ]


def write_results_csv(results: Iterable[BenchResult], stream: TextIO, footer: Optional[Iterable[str]] = None) -> None:
    """Benchmark rows; optional footer lines are written as ``# ...`` comments."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(
            (r.sweep, r.param, r.value, f"{r.baseline_seconds:.6f}", f"{r.improved_seconds:.6f}", f"{r.ratio:.6f}")
        )
    for line in footer or ():
        stream.write(f"# {line}\n")
