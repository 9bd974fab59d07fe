"""Two-phase sweep construction of behavior graphs.

The trace is first flattened into a timestamp list: every event contributes
a MIN and a MAX boundary entry, the entries are sorted by time and the time
values are then dropped.  A forward scan over that list from each MAX entry
finds the event's immediate successors, stopping as soon as a successor's
MAX entry shows up.  Worst case is quadratic in the trace length.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Dict, List, NamedTuple, Sequence, Set, Tuple

from .graph import BehaviorGraph, BehaviorGraphNode, Edge
from .model import LogValidationError, UncertainEvent, UncertainTrace, validate_trace

__all__ = [
    "Kind",
    "TimestampListEntry",
    "TimestampList",
    "rank_events",
    "timestamp_list",
    "behavior_graph",
    "build",
]


class Kind(IntEnum):
    # MIN < MAX matters: on equal timestamps MIN entries sort first, so an
    # event ending at t is never linked to an event starting at t.
    MIN = 0
    MAX = 1

    def __str__(self) -> str:
        return self.name


class TimestampListEntry(NamedTuple):
    rank: int
    activities: Tuple[str, ...]
    indeterminate: bool
    kind: Kind


TimestampList = Tuple[TimestampListEntry, ...]


def rank_events(trace: UncertainTrace) -> List[UncertainEvent]:
    """Events sorted by minimum timestamp, ties broken by ``event_id``.

    Position ``i`` in the returned list is rank ``i + 1``.
    """
    return sorted(trace.events, key=lambda e: (e.t_min, e.event_id))


def _timestamp_list(ranked: Sequence[UncertainEvent]) -> TimestampList:
    support = []
    for rank, e in enumerate(ranked, start=1):
        support.append((e.t_min, Kind.MIN, rank, e))
        support.append((e.t_max, Kind.MAX, rank, e))
    support.sort(key=lambda s: (s[0], s[1], s[2]))
    return tuple(
        TimestampListEntry(rank, e.activities, e.indeterminate, kind)
        for _, kind, rank, e in support
    )


def timestamp_list(trace: UncertainTrace) -> TimestampList:
    """Sorted boundary entries of ``trace`` with the timestamp values discarded.

    Two traces whose lists are equal share the same behavior graph, which is
    what makes the list usable as a variant key.
    """
    return _timestamp_list(rank_events(trace))


def behavior_graph(entries: Sequence[TimestampListEntry]) -> BehaviorGraph:
    """Build the behavior graph from a timestamp list alone."""
    nodes: Dict[int, BehaviorGraphNode] = {}
    for rank, acts, indet, _ in entries:
        nodes[rank] = BehaviorGraphNode(rank, acts, indet)

    edges: Set[Edge] = set()
    size = len(entries)
    for i in range(size - 1):
        rank, _, _, kind = entries[i]
        if kind != Kind.MAX:
            continue
        found: Set[int] = set()
        for j in range(i + 1, size):
            other, _, _, other_kind = entries[j]
            if other_kind == Kind.MIN:
                found.add(other)
            elif other in found:
                # the whole interval of a successor lies ahead: nothing later
                # can be an immediate successor
                break
        edges.update((rank, w) for w in found)
    return BehaviorGraph(tuple(nodes.values()), frozenset(edges))


def build(trace: UncertainTrace) -> BehaviorGraph:
    """Validated end-to-end construction; the result carries the rank -> event map."""
    problems = validate_trace(trace)
    if problems:
        raise LogValidationError(problems)
    ranked = rank_events(trace)
    graph = behavior_graph(_timestamp_list(ranked))
    return graph.with_event_ids(e.event_id for e in ranked)
