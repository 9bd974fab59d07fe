import io
import math

import pytest

from ubg.benchmark import (
    BenchResult,
    MemoryRow,
    check_memory,
    check_sweep_l,
    check_sweep_n,
    check_sweep_p,
    loglog_slope,
    memory_report,
    sweep_l,
    sweep_n,
    sweep_p,
    sweep_p_log,
    time_log,
    write_results_csv,
)
from ubg.synthgen import GenSpec, generate


def fake(value, base, fast, sweep="s"):
    return BenchResult(sweep, "x", value, base, fast, base, fast, 1)


def test_slope_recovers_exponent():
    xs = [50, 100, 200, 400]
    assert loglog_slope(xs, [x**3 for x in xs]) == pytest.approx(3.0)
    assert loglog_slope(xs, [5 * x**2 for x in xs], upper_half=False) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        loglog_slope([1], [1])


def test_small_sweeps_run():
    rs = sweep_n([10, 20], l=5, reps=1) + sweep_l([5, 10], n=5, reps=1) + sweep_p([0.0, 1.0], n=5, l=5, reps=1)
    assert all(r.baseline_seconds > 0 and r.improved_seconds > 0 for r in rs)
    assert [r.sweep for r in rs] == ["sweep_n"] * 2 + ["sweep_l"] * 2 + ["sweep_p"] * 2
    user = sweep_p_log(generate(GenSpec(n=5, l=5, p=0.0)), [0.0, 0.5], reps=1)
    assert [r.value for r in user] == [0.0, 0.5]


def test_reps_validated():
    with pytest.raises(ValueError):
        time_log(generate(GenSpec(n=1, l=2)), 0)


def test_checks_on_synthetic_numbers():
    cubic = [fake(x, x**3 * 1e-6, x**2 * 1e-6) for x in (50, 100, 200, 400)]
    assert all(c.passed for c in check_sweep_l(cubic))
    linear = [fake(x, 0.1 * x / 1000, 0.02 * x / 1000) for x in (1000, 2000, 4000)]
    assert all(c.passed for c in check_sweep_n(linear))
    flat = [fake(p, 1.0 - 0.5 * p, 0.01) for p in (0.0, 0.5, 1.0)]
    assert all(c.passed for c in check_sweep_p(flat))
    bad = [fake(p, 1.0, 0.01 + p) for p in (0.0, 1.0)]
    assert not all(c.passed for c in check_sweep_p(bad))


def test_memory():
    rows = memory_report([1, 50, 500])
    assert rows[0].fraction == 1.0
    assert all(c.passed for c in check_memory(rows))
    assert not check_memory([MemoryRow(5000, 100, 95, 1)])[1].passed


def test_csv_layout():
    buf = io.StringIO()
    write_results_csv([fake(1, 2.0, 1.0)], buf, ["slope baseline=3"])
    lines = buf.getvalue().splitlines()
    assert lines[0] == "sweep,param,value,baseline_s,improved_s,ratio"
    assert lines[1].endswith("0.500000") and lines[-1] == "# slope baseline=3"
    assert math.isnan(fake(1, 0.0, 1.0).ratio)
