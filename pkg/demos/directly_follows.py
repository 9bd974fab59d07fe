"""
Uncertain directly-follows graph
================================

Three kinds of trace, 80/15/5 copies.  Each edge carries how many traces
certainly and possibly show the pair next to each other.
"""

import io

from ubg import UncertainEvent, UncertainLog, UncertainTrace, filter_udfg, udfg
from ubg.logio import write_udfg_csv, write_udfg_dot


def shape(case, second, e_f, last, optional=False):
    e, f = e_f
    return UncertainTrace(
        case,
        (
            UncertainEvent(f"{case}.1", ["a"], 1, 1),
            UncertainEvent(f"{case}.2", second, 2, 2),
            UncertainEvent(f"{case}.3", ["e"], *e),
            UncertainEvent(f"{case}.4", ["f"], *f),
            UncertainEvent(f"{case}.5", ["g"], 5, 5),
            UncertainEvent(f"{case}.6", [last], 6, 6, optional),
        ),
    )


traces = [shape(f"x{i}", ["b"], ((3, 3), (4, 4)), "h") for i in range(80)]
traces += [shape(f"y{i}", ["b", "c"], ((3, 4), (3, 4)), "i") for i in range(15)]
traces += [shape(f"z{i}", ["b", "c", "d"], ((3, 4), (3, 4)), "j", optional=True) for i in range(5)]
graph = udfg(UncertainLog(tuple(traces)))

buf = io.StringIO()
write_udfg_csv(graph, buf)
print(buf.getvalue())

# keep only what happens in every trace of its kind
print(write_udfg_dot(filter_udfg(graph, 1, "by_min")))
