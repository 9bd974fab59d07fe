import math

import pytest
from hypothesis import given

import oracles
from conftest import traces
from ubg import sweep
from ubg.model import UncertainEvent, UncertainTrace
from ubg.realizations import (
    EnumerationLimitError,
    order_realizations,
    realization_count_bound,
    realizations,
    topological_sortings,
)


def test_hospital_orders(hospital):
    assert order_realizations(hospital) == {
        ("e1", "e2", "e3", "e4"),
        ("e1", "e3", "e2", "e4"),
        ("e3", "e1", "e2", "e4"),
    }


def test_hospital_sortings_map_to_orders(hospital):
    g = sweep.build(hospital)
    ids = dict(zip(g.ranks, g.event_ids))
    assert {tuple(ids[r] for r in s) for s in topological_sortings(g)} == order_realizations(hospital)


def test_hospital_realizations_include_outcomes(hospital):
    found = realizations(hospital)
    assert ("NightSweats", "Splenomeg", "PrTP", "Adm") in found
    assert ("SecTP", "Splenomeg", "Adm") in found


def test_fully_overlapping_gives_all_permutations():
    t = UncertainTrace("c", tuple(UncertainEvent(f"e{i}", ["a"], 0, 10) for i in range(5)))
    assert len(order_realizations(t)) == math.factorial(5)


def test_limits():
    t = UncertainTrace("c", tuple(UncertainEvent(f"e{i}", ["a", "b"], 0, 10, True) for i in range(6)))
    with pytest.raises(EnumerationLimitError):
        order_realizations(t, max_events=5)
    with pytest.raises(EnumerationLimitError) as err:
        realizations(t, budget=10)
    assert err.value.limit == 10


@given(traces(max_size=6))
def test_orders_match_permutation_filter(trace):
    assert order_realizations(trace) == oracles.order_realizations(trace)


@given(traces(max_size=6))
def test_sortings_correspond_to_orders(trace):
    g = sweep.build(trace)
    ids = dict(zip(g.ranks, g.event_ids))
    assert {tuple(ids[r] for r in s) for s in topological_sortings(g)} == order_realizations(trace)


@given(traces(max_size=5))
def test_realizations_match_brute_force(trace):
    assert realizations(trace) == oracles.realizations(trace)


@given(traces(max_size=5))
def test_count_bound(trace):
    assert len(realizations(trace)) <= realization_count_bound(trace)
