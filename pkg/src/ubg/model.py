"""Domain types for simple uncertain events, traces and logs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Tuple

__all__ = [
    "UncertainEvent",
    "UncertainTrace",
    "UncertainLog",
    "Violation",
    "LogValidationError",
    "precedes",
    "validate_trace",
    "validate_log",
]


def _check_timestamp(name: str, value: object) -> int:
    # bool is an int subclass but never a meaningful timestamp
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer timestamp, got {type(value).__name__}")
    return value


@dataclass(frozen=True)
class UncertainEvent:
    """One recorded event.

    ``activities`` is stored sorted and deduplicated so that equality and
    hashing do not depend on the order labels were supplied in.  A certain
    timestamp is encoded as ``t_min == t_max``.
    """

    event_id: str
    activities: Tuple[str, ...]
    t_min: int
    t_max: int
    indeterminate: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.activities, str):
            raise TypeError("activities must be a collection of labels, not a string")
        object.__setattr__(self, "activities", tuple(sorted(set(self.activities))))
        _check_timestamp("t_min", self.t_min)
        _check_timestamp("t_max", self.t_max)
        object.__setattr__(self, "indeterminate", bool(self.indeterminate))

    @property
    def symbol(self) -> str:
        return "?" if self.indeterminate else "!"

    def shifted(self, delta: int) -> "UncertainEvent":
        return UncertainEvent(
            self.event_id, self.activities, self.t_min + delta, self.t_max + delta, self.indeterminate
        )


@dataclass(frozen=True)
class UncertainTrace:
    case_id: str
    events: Tuple[UncertainEvent, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[UncertainEvent]:
        return iter(self.events)

    def event(self, event_id: str) -> UncertainEvent:
        for e in self.events:
            if e.event_id == event_id:
                return e
        raise KeyError(event_id)

    def shifted(self, delta: int) -> "UncertainTrace":
        """Copy of the trace with every timestamp moved by ``delta``."""
        return UncertainTrace(self.case_id, tuple(e.shifted(delta) for e in self.events))


@dataclass(frozen=True)
class UncertainLog:
    traces: Tuple[UncertainTrace, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "traces", tuple(self.traces))

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self) -> Iterator[UncertainTrace]:
        return iter(self.traces)

    @property
    def num_events(self) -> int:
        return sum(len(t) for t in self.traces)


def precedes(a: UncertainEvent, b: UncertainEvent) -> bool:
    """Strict order between uncertain events: ``a`` certainly ends before ``b`` starts."""
    return a.t_max < b.t_min


@dataclass(frozen=True)
class Violation:
    event_id: str
    reason: str
    case_id: str = ""

    def __str__(self) -> str:
        parts = []
        if self.case_id:
            parts.append(f"case {self.case_id!r}")
        if self.event_id:
            parts.append(f"event {self.event_id!r}")
        return f"{', '.join(parts)}: {self.reason}"


class LogValidationError(ValueError):
    """Raised when a trace or log breaks one of the model invariants."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations: List[Violation] = list(violations)
        lines = "\n".join(f"  {v}" for v in self.violations)
        super().__init__(f"{len(self.violations)} validation error(s):\n{lines}")


def validate_trace(trace: UncertainTrace) -> List[Violation]:
    """Return every invariant violation in ``trace``; an empty list means valid."""
    out: List[Violation] = []
    seen = set()
    for e in trace.events:
        if e.event_id in seen:
            out.append(Violation(e.event_id, "duplicate event_id", trace.case_id))
        seen.add(e.event_id)
        if not e.activities:
            out.append(Violation(e.event_id, "empty activity set", trace.case_id))
        if e.t_min > e.t_max:
            out.append(Violation(e.event_id, f"t_min {e.t_min} > t_max {e.t_max}", trace.case_id))
    return out


def validate_log(log: UncertainLog) -> List[Violation]:
    """Per-trace checks plus uniqueness of case and event identifiers across the log."""
    out: List[Violation] = []
    owner = {}
    cases = set()
    for trace in log.traces:
        if trace.case_id in cases:
            out.append(Violation("", "duplicate case_id", trace.case_id))
        cases.add(trace.case_id)
        out.extend(validate_trace(trace))
        for e in dict.fromkeys(ev.event_id for ev in trace.events):
            if e in owner:
                out.append(
                    Violation(e, f"event_id also used in case {owner[e]!r}", trace.case_id)
                )
            else:
                owner[e] = trace.case_id
    return out
