"""Enumeration of order-realizations, topological sortings and realizations.

Everything here is exponential by nature.  Limits are enforced up front and
exceeding one raises :class:`EnumerationLimitError`; results are never
silently truncated.
"""

from __future__ import annotations

from itertools import combinations, product
from math import prod
from typing import Dict, FrozenSet, Iterator, List, Sequence, Set, Tuple

from .graph import BehaviorGraph
from .model import UncertainEvent, UncertainTrace, precedes

__all__ = [
    "EnumerationLimitError",
    "DEFAULT_MAX_EVENTS",
    "DEFAULT_BUDGET",
    "order_realizations",
    "topological_sortings",
    "realization_count_bound",
    "realizations",
]

DEFAULT_MAX_EVENTS = 10
DEFAULT_BUDGET = 200_000

OrderRealization = Tuple[str, ...]
Realization = Tuple[str, ...]


class EnumerationLimitError(ValueError):
    def __init__(self, message: str, count: int = 0, limit: int = 0):
        super().__init__(message)
        self.count = count
        self.limit = limit


def _check_size(n: int, max_events: int) -> None:
    if n > max_events:
        raise EnumerationLimitError(
            f"refusing to enumerate orderings of {n} events (cap is {max_events})", n, max_events
        )


def _linear_extensions(items: Sequence[int], preds: Dict[int, Set[int]]) -> Iterator[Tuple[int, ...]]:
    # preds[x] = elements that must come before x
    remaining = {x: len(preds[x]) for x in items}
    succs: Dict[int, List[int]] = {x: [] for x in items}
    for x in items:
        for y in preds[x]:
            succs[y].append(x)
    prefix: List[int] = []

    def walk() -> Iterator[Tuple[int, ...]]:
        if len(prefix) == len(items):
            yield tuple(prefix)
            return
        ready = [x for x in items if remaining[x] == 0]
        for x in ready:
            remaining[x] = -1
            for y in succs[x]:
                remaining[y] -= 1
            prefix.append(x)
            yield from walk()
            prefix.pop()
            for y in succs[x]:
                remaining[y] += 1
            remaining[x] = 0

    return walk()


def _event_orders(events: Sequence[UncertainEvent]) -> Iterator[Tuple[int, ...]]:
    idx = list(range(len(events)))
    preds = {j: {i for i in idx if precedes(events[i], events[j])} for j in idx}
    return _linear_extensions(idx, preds)


def order_realizations(trace: UncertainTrace, max_events: int = DEFAULT_MAX_EVENTS) -> Set[OrderRealization]:
    """All permutations of the trace's events compatible with the interval order."""
    _check_size(len(trace), max_events)
    events = trace.events
    return {tuple(events[i].event_id for i in order) for order in _event_orders(events)}


def topological_sortings(graph: BehaviorGraph, max_nodes: int = DEFAULT_MAX_EVENTS) -> Set[Tuple[int, ...]]:
    """All topological orders of ``graph`` as sequences of node ranks."""
    _check_size(graph.num_nodes, max_nodes)
    ranks = graph.ranks
    preds: Dict[int, Set[int]] = {r: set() for r in ranks}
    for u, w in graph.edges:
        preds[w].add(u)
    return set(_linear_extensions(ranks, preds))


def realization_count_bound(trace: UncertainTrace, max_events: int = DEFAULT_MAX_EVENTS) -> int:
    """Upper bound on the (undeduplicated) realizations of ``trace``."""
    _check_size(len(trace), max_events)
    orders = sum(1 for _ in _event_orders(trace.events))
    indet = sum(1 for e in trace.events if e.indeterminate)
    return (2**indet) * prod(len(e.activities) for e in trace.events) * orders


def _subsets_to_drop(indeterminate: Sequence[int]) -> Iterator[FrozenSet[int]]:
    for k in range(len(indeterminate) + 1):
        for combo in combinations(indeterminate, k):
            yield frozenset(combo)


def realizations(
    trace: UncertainTrace,
    max_events: int = DEFAULT_MAX_EVENTS,
    budget: int = DEFAULT_BUDGET,
) -> Set[Realization]:
    """Possible activity sequences of ``trace``.

    A realization drops any subset of the indeterminate events, picks one
    label per remaining event and orders the remaining events by one of
    their order-realizations.  Results are deduplicated as label sequences.

    :raises EnumerationLimitError: if the trace is longer than ``max_events``
        or the realization count bound exceeds ``budget``
    """
    bound = realization_count_bound(trace, max_events)
    if bound > budget:
        raise EnumerationLimitError(
            f"trace {trace.case_id!r} has up to {bound} realizations (budget is {budget})", bound, budget
        )
    events = trace.events
    out: Set[Realization] = set()
    indet = [i for i, e in enumerate(events) if e.indeterminate]
    for dropped in _subsets_to_drop(indet):
        kept = [e for i, e in enumerate(events) if i not in dropped]
        for order in _event_orders(kept):
            for labels in product(*(kept[i].activities for i in order)):
                out.add(labels)
    return out
