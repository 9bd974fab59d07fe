"""Seeded synthetic uncertain logs and the worst-case trace family.

Randomness comes from numpy's PCG64 generator.  Each trace draws from its
own child of ``SeedSequence(seed)``, so trace ``i`` is identical no matter
how many traces are generated or in which order they are produced.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .model import UncertainEvent, UncertainLog, UncertainTrace
from .sweep import rank_events

__all__ = [
    "GenSpec",
    "alphabet",
    "generate",
    "generate_trace",
    "inject_uncertainty",
    "worst_case_trace",
    "BASE_STEP",
    "HALF_WIDTH",
]

#: distance between consecutive base timestamps
BASE_STEP = 10
#: half-width of an uncertain interval; > BASE_STEP so both neighbours overlap
HALF_WIDTH = 15


@dataclass(frozen=True)
class GenSpec:
    n: int = 100
    l: int = 20
    p: float = 0.5
    p_act: float = 0.0
    p_indet: float = 0.0
    alphabet_size: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("n", "l"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
        for name in ("p", "p_act", "p_indet"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def alphabet(size: int) -> List[str]:
    """``a, b, ..., z`` and then ``a1, b1, ...`` for larger alphabets."""
    letters = string.ascii_lowercase
    return [letters[i % 26] + (str(i // 26) if i >= 26 else "") for i in range(size)]


def generate_trace(spec: GenSpec, index: int, rng: np.random.Generator) -> UncertainTrace:
    labels = alphabet(spec.alphabet_size)
    case_id = f"c{index}"
    picks = rng.integers(0, spec.alphabet_size, size=spec.l)
    uncertain = rng.random(spec.l) < spec.p
    extra = rng.random(spec.l) < spec.p_act
    # extra label offset in [1, size) keeps it distinct from the first one
    extra_offset = rng.integers(1, max(spec.alphabet_size, 2), size=spec.l)
    indet = rng.random(spec.l) < spec.p_indet

    events = []
    for j in range(spec.l):
        t = BASE_STEP * (j + 1)
        lo, hi = (t - HALF_WIDTH, t + HALF_WIDTH) if uncertain[j] else (t, t)
        acts = [labels[picks[j]]]
        if extra[j] and spec.alphabet_size > 1:
            acts.append(labels[(picks[j] + extra_offset[j]) % spec.alphabet_size])
        events.append(UncertainEvent(f"{case_id}_e{j + 1}", acts, int(lo), int(hi), bool(indet[j])))
    return UncertainTrace(case_id, tuple(events))


def generate(spec: GenSpec) -> UncertainLog:
    """Log of ``spec.n`` traces with ``spec.l`` events each.

    Event ``j`` of a trace sits at ``10 * j``; with probability ``p`` it is
    widened to ``[t - 15, t + 15]`` which overlaps both neighbours' base
    timestamps.
    """
    children = np.random.SeedSequence(spec.seed).spawn(spec.n)
    return UncertainLog(
        tuple(generate_trace(spec, i, np.random.default_rng(child)) for i, child in enumerate(children))
    )


def worst_case_trace(k: int, case_id: Optional[str] = None) -> UncertainTrace:
    """``2k`` events whose behavior graph is the complete bipartite ``K(k, k)``.

    The first group has intervals ``[1, k], [2, k+1], ..., [k, 2k-1]`` and the
    second ``[2k, 3k], ..., [3k-1, 4k-1]``: everything inside a group overlaps
    and every first-group event ends before any second-group event starts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    case_id = case_id or f"worst{k}"
    events = []
    for i in range(k):
        events.append(UncertainEvent(f"{case_id}_a{i + 1}", [f"a{i + 1}"], 1 + i, k + i))
    for i in range(k):
        events.append(UncertainEvent(f"{case_id}_b{i + 1}", [f"b{i + 1}"], 2 * k + i, 3 * k + i))
    return UncertainTrace(case_id, tuple(events))


def inject_uncertainty(log: UncertainLog, p: float, seed: int = 0) -> UncertainLog:
    """Widen a fraction ``p`` of the events of an existing log.

    A selected event's interval is stretched from the start of its
    predecessor to the end of its successor (in minimum-timestamp order), so
    it overlaps both.  Events without a neighbour on one side keep that
    bound.  Trace ``i`` uses the ``i``-th child seed, like :func:`generate`.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    children = np.random.SeedSequence(seed).spawn(len(log))
    traces = []
    for trace, child in zip(log.traces, children):
        ranked = rank_events(trace)
        picked = np.random.default_rng(child).random(len(ranked)) < p
        widened = {}
        for i, e in enumerate(ranked):
            if not picked[i]:
                continue
            lo = ranked[i - 1].t_min if i > 0 else e.t_min
            hi = ranked[i + 1].t_max if i + 1 < len(ranked) else e.t_max
            widened[e.event_id] = UncertainEvent(
                e.event_id, e.activities, min(lo, e.t_min), max(hi, e.t_max), e.indeterminate
            )
        traces.append(UncertainTrace(trace.case_id, tuple(widened.get(e.event_id, e) for e in trace.events)))
    return UncertainLog(tuple(traces))
