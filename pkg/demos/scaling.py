"""
How the two builders scale
==========================

A quick, small version of the benchmark sweeps.  ``ubg bench --sweep all``
runs the full-size ones.
"""

from ubg import benchmark, build
from ubg.synthgen import worst_case_trace

results = benchmark.sweep_l([25, 50, 100, 200], n=50, reps=2)
for r in results:
    print(f"l={int(r.value):4d} baseline {r.baseline_min:.4f}s sweep {r.improved_min:.4f}s ratio {r.ratio_min:.3f}")

xs = [r.value for r in results]
print("baseline exponent", round(benchmark.loglog_slope(xs, [r.baseline_min for r in results]), 2))
print("sweep exponent", round(benchmark.loglog_slope(xs, [r.improved_min for r in results]), 2))

# the worst case for the output size: every early event precedes every late one
for k in (2, 4, 8):
    print(k, build(worst_case_trace(k)).num_edges)
