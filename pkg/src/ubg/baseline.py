"""Reference construction: all-pairs precedence graph, then transitive reduction.

Cubic in the trace length on dense inputs.  Kept as the correctness oracle
for :mod:`ubg.sweep` and as the slow series in the benchmarks.
"""

from __future__ import annotations

from graphlib import CycleError, TopologicalSorter
from typing import Dict, FrozenSet, Iterable, List, Set

import numpy as np

from .graph import BehaviorGraph, BehaviorGraphNode, Edge
from .model import LogValidationError, UncertainEvent, UncertainTrace, precedes, validate_trace
from .sweep import rank_events

__all__ = ["CyclicGraphError", "full_precedence_graph", "reduce_edges", "transitive_reduction", "build"]


class CyclicGraphError(ValueError):
    pass


def _precedence_successors(ranked: List[UncertainEvent]) -> Dict[int, Set[int]]:
    n = len(ranked)
    try:
        t_min = np.fromiter((e.t_min for e in ranked), dtype=np.int64, count=n)
        t_max = np.fromiter((e.t_max for e in ranked), dtype=np.int64, count=n)
    except OverflowError:
        return {
            r: {s for s, b in enumerate(ranked, 1) if precedes(a, b)}
            for r, a in enumerate(ranked, 1)
        }
    before = t_max[:, None] < t_min[None, :]
    return {u + 1: set((np.flatnonzero(before[u]) + 1).tolist()) for u in range(n)}


def _checked_ranking(trace: UncertainTrace) -> List[UncertainEvent]:
    problems = validate_trace(trace)
    if problems:
        raise LogValidationError(problems)
    return rank_events(trace)


def _nodes(ranked: List[UncertainEvent]) -> List[BehaviorGraphNode]:
    return [BehaviorGraphNode(r, e.activities, e.indeterminate) for r, e in enumerate(ranked, 1)]


def full_precedence_graph(trace: UncertainTrace) -> BehaviorGraph:
    """Edge for every strictly ordered pair of events (not reduced)."""
    ranked = _checked_ranking(trace)
    succ = _precedence_successors(ranked)
    edges = frozenset((u, w) for u, ws in succ.items() for w in ws)
    return BehaviorGraph(tuple(_nodes(ranked)), edges, tuple(e.event_id for e in ranked))


def _reduce(succ: Dict[int, Set[int]]) -> FrozenSet[Edge]:
    try:
        order = list(TopologicalSorter(succ).static_order())
    except CycleError as exc:
        raise CyclicGraphError(f"graph has a cycle through {exc.args[1]}") from None

    # static_order() treats the mapping values as prerequisites, so every
    # node is emitted after all of its successors: their reachability sets
    # are complete by the time they are needed
    below: Dict[int, Set[int]] = {}
    kept: List[Edge] = []
    for u in order:
        indirect: Set[int] = set()
        for c in succ[u]:
            indirect |= below[c]
        kept.extend((u, w) for w in succ[u] - indirect)
        indirect |= succ[u]
        below[u] = indirect
    return frozenset(kept)


def reduce_edges(nodes: Iterable[int], edges: Iterable[Edge]) -> FrozenSet[Edge]:
    """Transitive reduction of a DAG given as node and edge collections.

    For every node ``u`` the set of nodes reachable through its successors is
    collected; the edge ``u -> w`` survives only if ``w`` is not in it.  Each
    successor's reachability set is merged once per incoming edge, which is
    ``O(V * E)`` set work.

    :raises CyclicGraphError: if the input has a directed cycle
    """
    succ: Dict[int, Set[int]] = {u: set() for u in nodes}
    for u, w in edges:
        succ.setdefault(u, set()).add(w)
        succ.setdefault(w, set())
    return _reduce(succ)


def transitive_reduction(graph: BehaviorGraph) -> BehaviorGraph:
    return BehaviorGraph(graph.nodes, reduce_edges(graph.ranks, graph.edges), graph.event_ids)


def build(trace: UncertainTrace) -> BehaviorGraph:
    """Same result as ``transitive_reduction(full_precedence_graph(trace))``."""
    ranked = _checked_ranking(trace)
    edges = _reduce(_precedence_successors(ranked))
    return BehaviorGraph(tuple(_nodes(ranked)), edges, tuple(e.event_id for e in ranked))
