"""Behavior graphs for uncertain event logs.

The main entry points are :func:`ubg.sweep.build` for a single trace,
:func:`ubg.variants.process_log` for a whole log and :func:`ubg.udfg.udfg`
for the uncertain directly-follows graph.
"""

from .baseline import CyclicGraphError
from .graph import BehaviorGraph, BehaviorGraphNode
from .model import (
    LogValidationError,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
    Violation,
    precedes,
    validate_log,
    validate_trace,
)
from .realizations import EnumerationLimitError, order_realizations, realizations, topological_sortings
from .sweep import build, timestamp_list
from .udfg import UDFG, FilterPolicy, filter_udfg, udfg
from .variants import Variant, VariantMultiset, process_log

__version__ = "0.1.0"

__all__ = [
    "BehaviorGraph",
    "BehaviorGraphNode",
    "CyclicGraphError",
    "EnumerationLimitError",
    "FilterPolicy",
    "LogValidationError",
    "UDFG",
    "UncertainEvent",
    "UncertainLog",
    "UncertainTrace",
    "Variant",
    "VariantMultiset",
    "Violation",
    "build",
    "filter_udfg",
    "order_realizations",
    "precedes",
    "process_log",
    "realizations",
    "timestamp_list",
    "topological_sortings",
    "udfg",
    "validate_log",
    "validate_trace",
]
