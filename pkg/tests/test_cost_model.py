import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from windcost.cost_model import (
    PUBLISHED_MODEL,
    CostModel,
    TurbineSpec,
    power_independent_cost,
    specific_cost,
    total_cost,
    total_cost_derivative_p,
)
from windcost.errors import DomainError
from windcost.plausibility import critical_power

M = PUBLISHED_MODEL
V90 = TurbineSpec(75, 90, 3e6, 12, "V90-3.0 MW")


def test_published_constants():
    assert (M.coef_hh, M.coef_specific_power, M.coef_age, M.intercept) == (620, -1.68, 182, -1005)


@pytest.mark.parametrize(
    "hh, p, d, age, expected",
    [
        (75, 3_000_000, 90, 12, 1510.07),
        (75, 3_000_000, 90, 0, 879.60),
        (125, 3_450_000, 117, 0, 1449.45),
    ],
)
def test_specific_cost_table_values(hh, p, d, age, expected):
    assert specific_cost(M, TurbineSpec(hh, d, p, age)) == pytest.approx(expected, abs=0.01)


def test_specific_cost_degenerate_inputs_give_intercept():
    assert specific_cost(M, TurbineSpec(1, 90, 1, 0)) == pytest.approx(-1005, abs=1e-3)


def test_total_cost_is_kw_times_specific():
    assert total_cost(M, V90) == pytest.approx(3000 * 1510.07, abs=50)


def test_total_cost_vanishes_with_power():
    assert 0 < total_cost(M, V90.replace(rated_power=1e-6)) < 1e-5


def test_total_cost_negative_above_zero_cost_threshold():
    assert total_cost(M, V90.replace(rated_power=8.8e6)) < 0
    assert total_cost(M, V90.replace(rated_power=8.6e6)) > 0


@pytest.mark.parametrize("age", [-1, -0.001])
def test_negative_age_is_domain_error(age):
    spec = V90.replace(market_age=age)
    for fn in (specific_cost, total_cost, total_cost_derivative_p):
        with pytest.raises(DomainError, match="market_age"):
            fn(M, spec)


@pytest.mark.parametrize("field", ["hub_height", "rotor_diameter", "rated_power"])
@pytest.mark.parametrize("bad", [0, -3, math.nan, math.inf])
def test_spec_rejects_non_positive_geometry(field, bad):
    with pytest.raises(DomainError):
        V90.replace(**{field: bad})


def test_negative_age_representable():
    assert V90.replace(market_age=-2).market_age == -2


def test_cost_model_rejects_non_finite():
    with pytest.raises(DomainError):
        CostModel(coef_hh=math.nan)


def test_derivative_vanishes_at_vertex():
    p_star = critical_power(M, 75, 90, 12)
    d = total_cost_derivative_p(M, V90.replace(rated_power=p_star))
    scale = power_independent_cost(M, 75, 12) / 1000
    assert abs(d) < 1e-6 * scale


def test_derivative_at_vanishing_power_is_bracket():
    # currency per W: the power-independent bracket over 1000
    d = total_cost_derivative_p(M, V90.replace(rated_power=1e-9))
    assert d == pytest.approx(power_independent_cost(M, 75, 12) / 1000, rel=1e-9)


def test_derivative_matches_central_difference():
    h = 1.0
    fd = (total_cost(M, V90.replace(rated_power=3e6 + h)) - total_cost(M, V90.replace(rated_power=3e6 - h))) / (2 * h)
    assert total_cost_derivative_p(M, V90) == pytest.approx(fd, rel=1e-4)


specs = st.builds(
    TurbineSpec,
    hub_height=st.floats(50, 150),
    rotor_diameter=st.floats(40, 170),
    rated_power=st.floats(0.5e6, 10e6),
    market_age=st.floats(0, 16),
)


@given(specs)
def test_total_equals_kw_times_specific(spec):
    assert total_cost(M, spec) == pytest.approx(spec.rated_power / 1000 * specific_cost(M, spec), rel=1e-15, abs=1e-9)


@settings(max_examples=50)
@given(specs, st.floats(1.01, 1.5))
def test_monotone_in_each_input(spec, k):
    base = specific_cost(M, spec)
    assert specific_cost(M, spec.replace(hub_height=spec.hub_height * k)) > base
    assert specific_cost(M, spec.replace(rotor_diameter=spec.rotor_diameter * k)) > base
    assert specific_cost(M, spec.replace(rated_power=spec.rated_power * k)) < base
    assert specific_cost(M, spec.replace(market_age=spec.market_age * k + 0.1)) > base


@settings(max_examples=50)
@given(specs)
def test_total_cost_concave_in_power(spec):
    # second difference equals the analytic constant -2*1.68/(r^2 pi)/1000 per W^2
    h = 1e4
    f = lambda p: total_cost(M, spec.replace(rated_power=p))  # noqa: E731
    second = (f(spec.rated_power + h) - 2 * f(spec.rated_power) + f(spec.rated_power - h)) / h**2
    area = (spec.rotor_diameter / 2) ** 2 * np.pi
    assert second == pytest.approx(-2 * 1.68 / area / 1000, rel=1e-3)
