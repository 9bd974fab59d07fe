"""Uncertain directly-follows graphs.

For every pair of activities a trace contributes to the *maximum* count if
the pair is directly-following in at least one of its realizations, and to
the *minimum* count if it is directly-following in all of them.  Virtual
``START`` and ``END`` activities bracket every realization.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Tuple

from .model import LogValidationError, UncertainLog, UncertainTrace, validate_log
from .realizations import DEFAULT_BUDGET, DEFAULT_MAX_EVENTS, EnumerationLimitError, realizations
from .variants import process_log

__all__ = [
    "START",
    "END",
    "UDFG",
    "UDFGError",
    "FilterPolicy",
    "trace_df_bounds",
    "udfg",
    "filter_udfg",
    "csv_rows",
]

logger = logging.getLogger(__name__)

START = "START"
END = "END"

Pair = Tuple[str, str]


@dataclass(frozen=True)
class UDFG:
    edges: Dict[Pair, Tuple[int, int]] = field(default_factory=dict)
    trace_count: int = 0
    skipped: Tuple[str, ...] = ()

    @property
    def nodes(self) -> List[str]:
        labels = {a for pair in self.edges for a in pair}
        inner = sorted(labels - {START, END})
        return ([START] if self.edges else []) + inner + ([END] if self.edges else [])

    def sorted_edges(self) -> List[Tuple[str, str, int, int]]:
        rank = {a: i for i, a in enumerate(self.nodes)}
        return sorted(
            ((a, b, lo, hi) for (a, b), (lo, hi) in self.edges.items()),
            key=lambda r: (rank[r[0]], rank[r[1]]),
        )


class UDFGError(ValueError):
    def __init__(self, refusals: Mapping[str, str]):
        self.refusals = dict(refusals)
        detail = "; ".join(f"{c}: {msg}" for c, msg in self.refusals.items())
        super().__init__(f"{len(self.refusals)} trace(s) exceed the enumeration limits: {detail}")


class FilterPolicy(str, Enum):
    BY_MAX = "by_max"
    BY_MIN = "by_min"


def trace_df_bounds(
    trace: UncertainTrace,
    max_events: int = DEFAULT_MAX_EVENTS,
    budget: int = DEFAULT_BUDGET,
) -> Dict[Pair, Tuple[bool, bool]]:
    """``(always, sometimes)`` for every pair that directly follows in some realization.

    Pairs missing from the result are ``(False, False)``.
    """
    sometimes = set()
    always = None
    for labels in realizations(trace, max_events, budget):
        seq = (START,) + labels + (END,)
        pairs = set(zip(seq, seq[1:]))
        sometimes |= pairs
        always = pairs if always is None else always & pairs
    always = always or set()
    return {pair: (pair in always, True) for pair in sometimes}


def udfg(
    log: UncertainLog,
    max_events: int = DEFAULT_MAX_EVENTS,
    budget: int = DEFAULT_BUDGET,
    strict: bool = True,
) -> UDFG:
    """Aggregate per-trace bounds over the log.

    Traces are grouped into variants first; a variant's realizations depend
    only on its timestamp list, so bounds are computed once per variant and
    weighted by multiplicity.  Traces over the limits raise :class:`UDFGError`
    when ``strict``; otherwise they are left out and listed in ``skipped``.
    """
    problems = validate_log(log)
    if problems:
        raise LogValidationError(problems)
    by_case = {t.case_id: t for t in log.traces}
    edges: Dict[Pair, List[int]] = {}
    refusals: Dict[str, str] = {}
    counted = 0
    for variant in process_log(log):
        representative = by_case[variant.case_ids[0]]
        try:
            bounds = trace_df_bounds(representative, max_events, budget)
        except EnumerationLimitError as exc:
            for case_id in variant.case_ids:
                refusals[case_id] = str(exc)
            continue
        counted += variant.multiplicity
        for pair, (always, _) in bounds.items():
            lo_hi = edges.setdefault(pair, [0, 0])
            lo_hi[1] += variant.multiplicity
            if always:
                lo_hi[0] += variant.multiplicity
    if refusals:
        if strict:
            raise UDFGError(refusals)
        for case_id, msg in refusals.items():
            logger.warning("skipping case %s: %s", case_id, msg)
    order = [t.case_id for t in log.traces]
    skipped = tuple(c for c in order if c in refusals)
    return UDFG({p: (lo, hi) for p, (lo, hi) in edges.items()}, counted, skipped)


def filter_udfg(graph: UDFG, min_threshold: int, policy: FilterPolicy | str = FilterPolicy.BY_MAX) -> UDFG:
    """Keep the edges whose selected bound is at least ``min_threshold``."""
    if min_threshold < 0:
        raise ValueError("min_threshold must be non-negative")
    policy = FilterPolicy(policy)
    pick = 0 if policy is FilterPolicy.BY_MIN else 1
    kept = {pair: b for pair, b in graph.edges.items() if b[pick] >= min_threshold}
    return UDFG(kept, graph.trace_count, graph.skipped)


def csv_rows(graph: UDFG) -> List[Tuple[str, str, int, int]]:
    return graph.sorted_edges()
