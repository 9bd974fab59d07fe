"""
Variants: one graph per shape instead of one per trace
======================================================

Traces whose interval boundaries sort the same way share a behavior graph,
whatever their absolute times.
"""

from ubg.synthgen import GenSpec, generate
from ubg.variants import process_log, report_rows, variant_stats

log = generate(GenSpec(n=2000, l=10, p=0.5, alphabet_size=1, seed=3))
variants = process_log(log)

print("traces:", variants.trace_count, "variants:", len(variants))
for row in report_rows(variants)[:5]:
    print(row)

stats = variant_stats(variants)
print(f"graph bytes {stats.graphs_bytes_naive} -> {stats.graphs_bytes_deduplicated} ({stats.fraction:.1%})")
