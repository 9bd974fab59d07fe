"""Behavior graph container shared by both builders."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Set, Tuple

__all__ = ["BehaviorGraphNode", "BehaviorGraph", "Edge"]

Edge = Tuple[int, int]


class BehaviorGraphNode(NamedTuple):
    rank: int
    activities: Tuple[str, ...]
    indeterminate: bool


@dataclass(frozen=True)
class BehaviorGraph:
    """DAG over ranked nodes; edges are ``(rank, rank)`` pairs.

    ``event_ids[r - 1]`` is the identifier of the event ranked ``r``.  It is
    traceability metadata only and takes no part in equality, so graphs of
    two traces in the same variant compare equal.
    """

    nodes: Tuple[BehaviorGraphNode, ...] = ()
    edges: FrozenSet[Edge] = frozenset()
    event_ids: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        object.__setattr__(self, "edges", frozenset(self.edges))
        ranks = [n.rank for n in self.nodes]
        if len(set(ranks)) != len(ranks):
            raise ValueError("node ranks must be unique")
        known = set(ranks)
        for u, w in self.edges:
            if u not in known or w not in known:
                raise ValueError(f"edge ({u}, {w}) references an unknown node")

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def ranks(self) -> List[int]:
        return [n.rank for n in self.nodes]

    def node(self, rank: int) -> BehaviorGraphNode:
        for n in self.nodes:
            if n.rank == rank:
                return n
        raise KeyError(rank)

    def successors(self) -> Dict[int, Set[int]]:
        succ: Dict[int, Set[int]] = {n.rank: set() for n in self.nodes}
        for u, w in self.edges:
            succ[u].add(w)
        return succ

    def with_event_ids(self, event_ids: Iterable[str]) -> "BehaviorGraph":
        return BehaviorGraph(self.nodes, self.edges, tuple(event_ids))

    def event_edges(self) -> FrozenSet[Tuple[str, str]]:
        """Edges relabelled with event identifiers (requires ``event_ids``)."""
        if len(self.event_ids) != len(self.nodes):
            raise ValueError("graph carries no rank -> event_id mapping")
        ids = dict(zip(self.ranks, self.event_ids))
        return frozenset((ids[u], ids[w]) for u, w in self.edges)

    def to_bytes(self) -> bytes:
        """Canonical, deterministic serialization; used for memory accounting."""
        payload = [
            [[n.rank, list(n.activities), n.indeterminate] for n in self.nodes],
            sorted(self.edges),
        ]
        return json.dumps(payload, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
