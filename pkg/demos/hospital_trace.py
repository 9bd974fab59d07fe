"""
A behavior graph for a single uncertain trace
=============================================

Four hospital events: one may not have happened, one has two possible
activity labels and one only has a timestamp range.
"""

from ubg import UncertainEvent, UncertainTrace, build, order_realizations, realizations
from ubg.logio import write_dot
from ubg.sweep import timestamp_list

trace = UncertainTrace(
    "ID327",
    (
        UncertainEvent("e1", ["NightSweats"], 5, 5, indeterminate=True),
        UncertainEvent("e2", ["PrTP", "SecTP"], 8, 8),
        UncertainEvent("e3", ["Splenomeg"], 4, 10),
        UncertainEvent("e4", ["Adm"], 12, 12),
    ),
)

# the sweep only needs the sorted interval boundaries, not the times
for entry in timestamp_list(trace):
    print(entry.rank, entry.activities, entry.kind.name)

graph = build(trace)
print(sorted(graph.event_edges()))
print(write_dot(graph))

# every topological order of the graph is a possible event order
for order in sorted(order_realizations(trace)):
    print(" -> ".join(order))

# labels and optional events multiply the possibilities
for seq in sorted(realizations(trace)):
    print(", ".join(seq))
