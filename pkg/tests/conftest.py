from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from ubg.model import UncertainEvent, UncertainLog, UncertainTrace

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

LABELS = ("a", "b", "c", "d")


@st.composite
def events(draw, event_id: str, horizon: int = 12, labels=LABELS) -> UncertainEvent:
    lo = draw(st.integers(0, horizon))
    width = draw(st.sampled_from([0, 0, 1, 2, 3, 5, 8]))
    acts = draw(st.lists(st.sampled_from(labels), min_size=1, max_size=2, unique=True))
    return UncertainEvent(event_id, acts, lo, lo + width, draw(st.booleans()))


@st.composite
def traces(draw, min_size: int = 0, max_size: int = 7, case_id: str = "c", **kw) -> UncertainTrace:
    n = draw(st.integers(min_size, max_size))
    return UncertainTrace(case_id, tuple(draw(events(f"{case_id}_e{i}", **kw)) for i in range(n)))


@st.composite
def logs(draw, max_traces: int = 5, max_size: int = 5) -> UncertainLog:
    k = draw(st.integers(0, max_traces))
    return UncertainLog(tuple(draw(traces(0, max_size, case_id=f"c{i}")) for i in range(k)))


def random_trace(rng: np.random.Generator, size: int, case_id: str = "c", horizon: int = 10) -> UncertainTrace:
    """Trace with many ties and point intervals, drawn from a numpy generator."""
    evs = []
    for i in range(size):
        lo = int(rng.integers(0, horizon))
        width = int(rng.choice([0, 0, 1, 2, 4, 7]))
        evs.append(UncertainEvent(f"{case_id}_e{i}", [str(rng.choice(list("abc")))], lo, lo + width, bool(rng.random() < 0.3)))
    return UncertainTrace(case_id, tuple(evs))


def hospital_trace() -> UncertainTrace:
    return UncertainTrace(
        "ID327",
        (
            UncertainEvent("e1", ["NightSweats"], 5, 5, True),
            UncertainEvent("e2", ["PrTP", "SecTP"], 8, 8),
            UncertainEvent("e3", ["Splenomeg"], 4, 10),
            UncertainEvent("e4", ["Adm"], 12, 12),
        ),
    )


def six_event_trace() -> UncertainTrace:
    return UncertainTrace(
        "872",
        (
            UncertainEvent("e1", ["a"], 5, 5),
            UncertainEvent("e2", ["b"], 6, 10),
            UncertainEvent("e3", ["c"], 7, 7),
            UncertainEvent("e4", ["d"], 8, 11),
            UncertainEvent("e5", ["e"], 9, 9),
            UncertainEvent("e6", ["f"], 12, 13),
        ),
    )


def _udfg_shape(case_id: str, second, last: str, last_indet: bool):
    return UncertainTrace(
        case_id,
        (
            UncertainEvent(f"{case_id}_1", ["a"], 1, 1),
            UncertainEvent(f"{case_id}_2", second, 2, 2),
            UncertainEvent(f"{case_id}_3", ["e"], 3, 4),
            UncertainEvent(f"{case_id}_4", ["f"], 3, 4),
            UncertainEvent(f"{case_id}_5", ["g"], 5, 5),
            UncertainEvent(f"{case_id}_6", [last], 6, 6, last_indet),
        ),
    )


def dfg_example_log() -> UncertainLog:
    """80 copies of a,b,e,f,g,h; 15 of a,{b,c},[e,f],g,i; 5 of a,{b,c,d},[e,f],g,j? ."""
    traces = []
    for i in range(80):
        t = _udfg_shape(f"x{i}", ["b"], "h", False)
        # the certain trace has e strictly before f
        evs = list(t.events)
        evs[2] = UncertainEvent(evs[2].event_id, ["e"], 3, 3)
        evs[3] = UncertainEvent(evs[3].event_id, ["f"], 4, 4)
        traces.append(UncertainTrace(t.case_id, tuple(evs)))
    traces += [_udfg_shape(f"y{i}", ["b", "c"], "i", False) for i in range(15)]
    traces += [_udfg_shape(f"z{i}", ["b", "c", "d"], "j", True) for i in range(5)]
    return UncertainLog(tuple(traces))


@pytest.fixture
def hospital() -> UncertainTrace:
    return hospital_trace()


@pytest.fixture
def six_events() -> UncertainTrace:
    return six_event_trace()


@pytest.fixture
def dfg_log() -> UncertainLog:
    return dfg_example_log()


ACCEPTANCE_LINES = []


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
