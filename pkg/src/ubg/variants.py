"""Group a log into uncertain variants and build one graph per variant."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import BehaviorGraph
from .model import LogValidationError, UncertainLog, UncertainTrace, validate_log
from .sweep import TimestampList, behavior_graph, timestamp_list

__all__ = [
    "variant_key",
    "Variant",
    "VariantMultiset",
    "VariantStats",
    "process_log",
    "variant_stats",
    "report_rows",
    "REPORT_COLUMNS",
]

REPORT_COLUMNS = ("variant_index", "multiplicity", "num_events", "num_edges")


def variant_key(entries: TimestampList) -> bytes:
    """Canonical byte encoding of a timestamp list; equal lists give equal keys."""
    payload = [[e.rank, list(e.activities), int(e.indeterminate), int(e.kind)] for e in entries]
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


@dataclass(frozen=True)
class Variant:
    key: bytes
    graph: BehaviorGraph
    case_ids: Tuple[str, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.case_ids)


@dataclass(frozen=True)
class VariantMultiset:
    """Variants ordered by descending multiplicity, then key bytes."""

    variants: Tuple[Variant, ...]

    def __len__(self) -> int:
        return len(self.variants)

    def __iter__(self):
        return iter(self.variants)

    def __getitem__(self, i: int) -> Variant:
        return self.variants[i]

    @property
    def trace_count(self) -> int:
        return sum(v.multiplicity for v in self.variants)

    def graph_of(self, case_id: str) -> BehaviorGraph:
        for v in self.variants:
            if case_id in v.case_ids:
                return v.graph
        raise KeyError(case_id)

    def case_to_variant(self) -> Dict[str, int]:
        return {c: i for i, v in enumerate(self.variants) for c in v.case_ids}


def _merge(
    keyed: Sequence[Tuple[str, TimestampList]],
) -> VariantMultiset:
    groups: Dict[bytes, Tuple[TimestampList, List[str]]] = {}
    for case_id, entries in keyed:
        # dict lookup compares full keys, so no merge can result from a hash collision
        key = variant_key(entries)
        if key in groups:
            groups[key][1].append(case_id)
        else:
            groups[key] = (entries, [case_id])
    variants = [
        Variant(key, behavior_graph(entries), tuple(cases)) for key, (entries, cases) in groups.items()
    ]
    variants.sort(key=lambda v: (-v.multiplicity, v.key))
    return VariantMultiset(tuple(variants))


def _keyed(trace: UncertainTrace) -> Tuple[str, TimestampList]:
    return trace.case_id, timestamp_list(trace)


def process_log(log: UncertainLog, threads: Optional[int] = None) -> VariantMultiset:
    """Deduplicate traces by timestamp list and build each variant's graph once.

    With ``threads > 1`` the timestamp lists are computed in a process pool;
    the result does not depend on the degree of parallelism.
    """
    problems = validate_log(log)
    if problems:
        raise LogValidationError(problems)
    if threads and threads > 1 and len(log) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            keyed = list(pool.map(_keyed, log.traces, chunksize=max(1, len(log) // (4 * threads))))
    else:
        keyed = [_keyed(t) for t in log.traces]
    return _merge(keyed)


@dataclass(frozen=True)
class VariantStats:
    trace_count: int
    variant_count: int
    graphs_bytes_deduplicated: int
    graphs_bytes_naive: int

    @property
    def fraction(self) -> float:
        if self.graphs_bytes_naive == 0:
            return 1.0
        return self.graphs_bytes_deduplicated / self.graphs_bytes_naive


def variant_stats(variants: VariantMultiset) -> VariantStats:
    """Storage for one graph per variant versus one graph per trace."""
    dedup = naive = 0
    for v in variants:
        size = len(v.graph.to_bytes())
        dedup += size
        naive += size * v.multiplicity
    return VariantStats(variants.trace_count, len(variants), dedup, naive)


def report_rows(variants: VariantMultiset) -> List[Tuple[int, int, int, int]]:
    """Rows of the variant report, indexed from 1 in output order."""
    return [
        (i, v.multiplicity, v.graph.num_nodes, v.graph.num_edges)
        for i, v in enumerate(variants, start=1)
    ]
