"""Reading and writing uncertain logs, and DOT rendering of graphs.

Two log formats are supported:

* ``csv``: one event per row under the header
  ``case_id,event_id,activities,t_min,t_max,indeterminate``; activities are
  ``|``-separated and the last column is ``!`` or ``?``.
* ``jsonl``: one trace per line,
  ``{"case_id": ..., "events": [{"event_id", "activities", "t_min", "t_max", "indeterminate"}]}``.

Timestamps are raw integers or ISO-8601 strings; the latter become integer
nanoseconds since the Unix epoch (naive values are taken as UTC).  Writers
always emit integers.  CSV cannot hold a trace without events.
"""

from __future__ import annotations

import csv
import io
import json
import re
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .graph import BehaviorGraph
from .model import LogValidationError, UncertainEvent, UncertainLog, UncertainTrace, validate_log
from .udfg import UDFG

__all__ = [
    "CSV_COLUMNS",
    "LogParseError",
    "parse_timestamp",
    "load_log",
    "read_log",
    "dump_log",
    "write_log",
    "write_dot",
    "write_udfg_dot",
    "write_udfg_csv",
    "infer_format",
]

CSV_COLUMNS = ("case_id", "event_id", "activities", "t_min", "t_max", "indeterminate")
SEPARATOR = "|"
_SYMBOLS = {"!": False, "?": True}
_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_INT = re.compile(r"[+-]?\d+")
_FRACTION = re.compile(r"(\.\d+)")

PathLike = Union[str, Path]


class LogParseError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_timestamp(value: Union[str, int]) -> int:
    """Integer timestamp from an integer, a decimal string or ISO-8601 text."""
    if isinstance(value, bool):
        raise ValueError("boolean is not a timestamp")
    if isinstance(value, int):
        return value
    if not isinstance(value, str):
        raise ValueError(f"timestamps must be integers or ISO-8601 strings, got {value!r}")
    text = value.strip()
    if _INT.fullmatch(text):
        return int(text)
    # fromisoformat only keeps microseconds; the fraction is handled here so
    # nanosecond inputs stay exact
    frac_ns = 0
    m = _FRACTION.search(text)
    if m and ":" in text[: m.start()]:
        digits = m.group(1)[1:]
        frac_ns = int((digits + "000000000")[:9])
        text = text[: m.start()] + text[m.end():]
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(text)
    except ValueError:
        raise ValueError(f"not an integer or ISO-8601 timestamp: {value!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    delta = dt - _EPOCH
    return (delta.days * 86_400 + delta.seconds) * 10**9 + frac_ns


def _indeterminate(symbol: object, line: int) -> bool:
    if symbol not in _SYMBOLS:
        raise LogParseError(line, f"unknown indeterminacy symbol {symbol!r} (expected '!' or '?')")
    return _SYMBOLS[symbol]


def _timestamp(value: object, field: str, line: int) -> int:
    try:
        return parse_timestamp(value)  # type: ignore[arg-type]
    except ValueError as exc:
        raise LogParseError(line, f"{field}: {exc}") from None


def infer_format(path: PathLike) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix in (".jsonl", ".ndjson", ".json"):
        return "jsonl"
    raise ValueError(f"cannot infer log format from {str(path)!r}; pass format='csv' or 'jsonl'")


def _load_csv(stream: IO[str]) -> List[UncertainTrace]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        return []
    if tuple(h.strip() for h in header) != CSV_COLUMNS:
        raise LogParseError(reader.line_num, f"expected header {','.join(CSV_COLUMNS)}, got {','.join(header)}")
    cases: Dict[str, List[UncertainEvent]] = {}
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise LogParseError(line, f"expected {len(CSV_COLUMNS)} fields, got {len(row)}")
        case_id, event_id, acts, t_min, t_max, symbol = row
        labels = acts.split(SEPARATOR) if acts else []
        event = UncertainEvent(
            event_id,
            labels,
            _timestamp(t_min, "t_min", line),
            _timestamp(t_max, "t_max", line),
            _indeterminate(symbol.strip(), line),
        )
        cases.setdefault(case_id, []).append(event)
    return [UncertainTrace(c, tuple(evs)) for c, evs in cases.items()]


def _load_jsonl(stream: IO[str]) -> List[UncertainTrace]:
    traces = []
    for line, raw in enumerate(stream, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            case_id = obj["case_id"]
            raw_events = obj["events"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise LogParseError(line, f"malformed trace record: {exc}") from None
        events = []
        for ev in raw_events:
            try:
                event_id, acts = ev["event_id"], ev["activities"]
                t_min, t_max, symbol = ev["t_min"], ev["t_max"], ev["indeterminate"]
            except (KeyError, TypeError) as exc:
                raise LogParseError(line, f"malformed event record: {exc}") from None
            if not isinstance(acts, list) or not all(isinstance(a, str) for a in acts):
                raise LogParseError(line, "activities must be a list of strings")
            events.append(
                UncertainEvent(
                    str(event_id),
                    acts,
                    _timestamp(t_min, "t_min", line),
                    _timestamp(t_max, "t_max", line),
                    _indeterminate(symbol, line),
                )
            )
        traces.append(UncertainTrace(str(case_id), tuple(events)))
    return traces


def load_log(stream: IO[str], format: str) -> UncertainLog:
    """Parse and validate a log from an open text stream."""
    if format == "csv":
        traces = _load_csv(stream)
    elif format == "jsonl":
        traces = _load_jsonl(stream)
    else:
        raise ValueError(f"unknown log format {format!r}")
    log = UncertainLog(tuple(traces))
    problems = validate_log(log)
    if problems:
        raise LogValidationError(problems)
    return log


def read_log(path: PathLike, format: Optional[str] = None) -> UncertainLog:
    """Read a log file; cases keep the order in which they first appear."""
    fmt = format or infer_format(path)
    with open(path, newline="" if fmt == "csv" else None, encoding="utf-8") as fh:
        return load_log(fh, fmt)


def _check_labels(labels: Iterable[str], event_id: str) -> None:
    for a in labels:
        if SEPARATOR in a:
            raise ValueError(f"event {event_id!r}: activity label {a!r} contains {SEPARATOR!r}")


def dump_log(log: UncertainLog, stream: IO[str], format: str) -> None:
    if format == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for trace in log:
            for e in trace:
                _check_labels(e.activities, e.event_id)
                writer.writerow(
                    (trace.case_id, e.event_id, SEPARATOR.join(e.activities), e.t_min, e.t_max, e.symbol)
                )
    elif format == "jsonl":
        for trace in log:
            record = {
                "case_id": trace.case_id,
                "events": [
                    {
                        "event_id": e.event_id,
                        "activities": list(e.activities),
                        "t_min": e.t_min,
                        "t_max": e.t_max,
                        "indeterminate": e.symbol,
                    }
                    for e in trace
                ],
            }
            stream.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
    else:
        raise ValueError(f"unknown log format {format!r}")


def write_log(log: UncertainLog, path: PathLike, format: Optional[str] = None) -> None:
    fmt = format or infer_format(path)
    with open(path, "w", newline="" if fmt == "csv" else None, encoding="utf-8") as fh:
        dump_log(log, fh, fmt)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _activity_label(activities: Sequence[str]) -> str:
    if len(activities) == 1:
        return activities[0]
    return "{" + ", ".join(activities) + "}"


def write_dot(graph: BehaviorGraph, name: str = "behavior_graph") -> str:
    """DOT text for a behavior graph; indeterminate events get dashed borders."""
    out = io.StringIO()
    out.write(f"digraph {name} {{\n")
    for n in graph.nodes:
        attrs = [f"label={_quote(_activity_label(n.activities))}"]
        if n.indeterminate:
            attrs.append("style=dashed")
        out.write(f"  n{n.rank} [{', '.join(attrs)}];\n")
    for u, w in sorted(graph.edges):
        out.write(f"  n{u} -> n{w};\n")
    out.write("}\n")
    return out.getvalue()


def write_udfg_dot(graph: UDFG, name: str = "udfg") -> str:
    """DOT text for a UDFG; every edge is labelled ``[min, max]``."""
    out = io.StringIO()
    out.write(f"digraph {name} {{\n")
    if graph.edges:
        for label in graph.nodes:
            out.write(f"  {_quote(label)};\n")
    for a, b, lo, hi in graph.sorted_edges():
        out.write(f"  {_quote(a)} -> {_quote(b)} [label={_quote(f'[{lo}, {hi}]')}];\n")
    out.write("}\n")
    return out.getvalue()


def write_udfg_csv(graph: UDFG, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("source", "target", "min", "max"))
    for row in graph.sorted_edges():
        writer.writerow(row)

