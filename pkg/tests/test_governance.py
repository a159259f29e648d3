import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vranplan.errors import ConfigError, DomainError
from vranplan.governance import (ClockConfig, DelayCostModel, Status, VarietyLedger, check_clock_hierarchy,
                                 check_requisite_variety, corrective_cost, delay_cost_curve)


def test_cost_anchor_points():
    m = DelayCostModel(2.5, 4.0)
    assert corrective_cost(m, 0) == 2.5
    assert corrective_cost(m, 4.0) == pytest.approx(2.5 * math.e, rel=1e-12)


@settings(max_examples=200)
@given(st.floats(0, 20), st.floats(0, 20), st.floats(0.1, 10), st.floats(0.1, 10))
def test_functional_equation(a, b, c0, tau_c):
    m = DelayCostModel(c0, tau_c)
    lhs = corrective_cost(m, a + b) * c0
    rhs = corrective_cost(m, a) * corrective_cost(m, b)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_cost_monotone_and_domain():
    m = DelayCostModel(1, 3)
    costs = [row["cost"] for row in delay_cost_curve(m, [0, 1, 2, 5, 10])]
    assert costs == sorted(costs)
    with pytest.raises(DomainError):
        corrective_cost(m, -0.1)
    with pytest.raises(ConfigError):
        DelayCostModel(1, 0)


@pytest.mark.parametrize("tech,build,node,status", [
    (5, 1, 0.875, Status.PASS),
    (1, 1, 0.875, Status.FAIL),
    (1.75, 1, 0.875, Status.PASS),
    (1.7, 1, 0.875, Status.FAIL),
    (2, 3, 0.5, Status.FAIL),
])
def test_clock_hierarchy(tech, build, node, status):
    assert check_clock_hierarchy(ClockConfig(tech, build, node)).status is status


def test_clock_binding_terms_and_warnings():
    assert check_clock_hierarchy(ClockConfig(1, 1, 0.875)).binding_term == "node_cycle"
    assert check_clock_hierarchy(ClockConfig(2, 3, 0.5)).binding_term == "horizon_build"
    warn = check_clock_hierarchy(ClockConfig(5, 1, v_tech=20, v_build=12))
    assert warn.status is Status.WARN and warn.binding_term == "velocity_order"
    assert check_clock_hierarchy(ClockConfig(5, 1, v_tech=7)).status is Status.WARN
    assert check_clock_hierarchy(ClockConfig(5, 1, v_tech=6)).status is Status.PASS
    with pytest.raises(ConfigError):
        ClockConfig(0, 1)


def test_requisite_variety():
    assert check_requisite_variety(VarietyLedger(10, 8)) is Status.PASS
    assert check_requisite_variety(VarietyLedger(8, 8)) is Status.PASS
    assert check_requisite_variety(VarietyLedger(8, 10)) is Status.FAIL
    with pytest.raises(ConfigError):
        VarietyLedger(-1, 0)


@settings(max_examples=200)
@given(st.floats(0, 30), st.floats(0.01, 5), st.floats(0.1, 10), st.floats(0.5, 10))
def test_cost_strictly_increasing_and_convex(tau, h, c0, tau_c):
    m = DelayCostModel(c0, tau_c)
    lo, mid, hi = (corrective_cost(m, t) for t in (tau, tau + h, tau + 2 * h))
    assert lo < mid < hi
    assert hi - 2 * mid + lo >= -1e-12 * hi


@settings(max_examples=300)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 5))
def test_clock_check_monotone_in_tech_horizon(a, extra, build, node):
    before = check_clock_hierarchy(ClockConfig(a, build, node)).status
    after = check_clock_hierarchy(ClockConfig(a + extra, build, node)).status
    assert not (before is not Status.FAIL and after is Status.FAIL)
