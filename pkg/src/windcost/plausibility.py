"""Regimes of the cost model in rated power and classification against them.

Total cost is a concave quadratic in rated power. Below its vertex ``p*`` cost
grows with capacity (plausible); above it cost falls (implausible) and beyond
``2 p*`` the specific cost is negative.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_turbine_array
from .cost_model import (
    PUBLISHED_MODEL,
    CostModel,
    TurbineSpec,
    _check_geometry,
    power_independent_cost,
    specific_cost,
    specific_power_slope,
    swept_area,
    total_cost,
)
from .errors import DomainError, NotApplicable

__all__ = [
    "Category",
    "PlausibilityVerdict",
    "SweepPoint",
    "Sensitivity",
    "critical_power",
    "zero_cost_power",
    "classify",
    "region_sweep",
    "sensitivity",
    "PlausibilityClassifier",
]


class Category(str, enum.Enum):
    # Declaration order is severity order.
    PLAUSIBLE = "Plausible"
    IMPLAUSIBLE_DECREASING = "ImplausibleDecreasing"
    NEGATIVE_COST = "NegativeCost"
    UNSUPPORTED_AGE = "UnsupportedAge"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PlausibilityVerdict:
    category: Category
    critical_power: Optional[float]  # W, None when no maximum exists
    zero_cost_power: Optional[float]  # W
    margin: Optional[float]  # rated_power / critical_power

    @property
    def is_plausible(self) -> bool:
        return self.category is Category.PLAUSIBLE


class SweepPoint(NamedTuple):
    rated_power: float
    total_cost: float
    category: Category


class Sensitivity(NamedTuple):
    """Partial derivatives of specific cost.

    ``d_cost_d_p`` is per W of rated power, ``d_cost_d_r`` per m of rotor radius.
    """

    d_cost_d_p: float
    d_cost_d_r: float

    @property
    def opposite_signs(self) -> bool:
        return self.d_cost_d_p * self.d_cost_d_r < 0


def critical_power(model: CostModel, hub_height: float, rotor_diameter: float, market_age: float) -> float:
    """Rated power (W) at which total cost peaks.

    Raises NotApplicable when the power-independent bracket is not positive or
    the specific-power coefficient does not produce a maximum.
    """
    _check_geometry(hub_height, rotor_diameter, market_age)
    a = power_independent_cost(model, hub_height, market_age)
    if model.coef_specific_power >= 0:
        raise NotApplicable("total cost has no maximum for a non-negative specific-power coefficient")
    if a <= 0:
        raise NotApplicable(f"power-independent cost {a:.6g} <= 0: cost is negative at every rated power")
    return a * swept_area(rotor_diameter) / (2.0 * abs(model.coef_specific_power))


def zero_cost_power(model: CostModel, hub_height: float, rotor_diameter: float, market_age: float) -> float:
    """Rated power (W) where specific cost crosses zero; twice the critical power."""
    return 2.0 * critical_power(model, hub_height, rotor_diameter, market_age)


def classify(model: CostModel, spec: TurbineSpec) -> PlausibilityVerdict:
    if spec.market_age < 0:
        return PlausibilityVerdict(Category.UNSUPPORTED_AGE, None, None, None)
    try:
        p_star = critical_power(model, spec.hub_height, spec.rotor_diameter, spec.market_age)
    except NotApplicable:
        p_star = None
    cost = specific_cost(model, spec)
    if p_star is None:
        category = Category.NEGATIVE_COST if cost < 0 else Category.PLAUSIBLE
        return PlausibilityVerdict(category, None, None, None)

    if cost < 0:
        category = Category.NEGATIVE_COST
    elif spec.rated_power > p_star:
        category = Category.IMPLAUSIBLE_DECREASING
    else:
        category = Category.PLAUSIBLE
    return PlausibilityVerdict(category, p_star, 2.0 * p_star, spec.rated_power / p_star)


def region_sweep(
    model: CostModel,
    hub_height: float,
    rotor_diameter: float,
    market_age: float,
    p_min: float,
    p_max: float,
    steps: int,
) -> List[SweepPoint]:
    """Total cost and category on an evenly spaced rated-power grid, endpoints included."""
    if not (math.isfinite(p_min) and math.isfinite(p_max)) or not 0 < p_min < p_max:
        raise DomainError(f"need 0 < p_min < p_max, got p_min={p_min!r}, p_max={p_max!r}")
    if int(steps) != steps or steps < 2:
        raise DomainError(f"steps must be an integer >= 2, got {steps!r}")
    _check_geometry(hub_height, rotor_diameter, market_age)

    points = []
    for p in np.linspace(p_min, p_max, int(steps)):
        spec = TurbineSpec(hub_height, rotor_diameter, float(p), market_age)
        points.append(SweepPoint(float(p), total_cost(model, spec), classify(model, spec).category))
    return points


def sensitivity(model: CostModel, spec: TurbineSpec) -> Sensitivity:
    _check_geometry(spec.hub_height, spec.rotor_diameter, spec.market_age)
    d_p = specific_power_slope(model, spec.rotor_diameter)
    r = spec.rotor_radius
    d_r = -2.0 * model.coef_specific_power * spec.rated_power / (math.pi * r**3)
    return Sensitivity(d_p, d_r)


class PlausibilityClassifier(BaseEstimator):
    """Estimator-style wrapper around :func:`classify`.

    Nothing is learned; ``fit`` only validates input. ``X`` has columns
    hub height (m), rated power (W), rotor diameter (m), market age (yr), in
    the argument order of the cost function.

    Parameters
    ----------
    model : CostModel, default=None
        Coefficients to classify against. ``None`` uses the published ones.
    """

    def __init__(self, model=None):
        self.model = model

    def _model(self) -> CostModel:
        return PUBLISHED_MODEL if self.model is None else self.model

    def fit(self, X, y=None):
        X = check_turbine_array(X, allow_negative_age=True)
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([c.value for c in Category])
        return self

    def _verdicts(self, X):
        from sklearn.utils.validation import check_is_fitted

        check_is_fitted(self, "n_features_in_")
        X = check_turbine_array(X, allow_negative_age=True)
        model = self._model()
        return [classify(model, TurbineSpec(hh, d, p, age)) for hh, p, d, age in X]

    def predict(self, X):
        """Category label per row."""
        return np.array([v.category.value for v in self._verdicts(X)], dtype=object)

    def transform(self, X):
        """Margin ``p / p*`` per row; NaN where no critical power exists."""
        margins = [np.nan if v.margin is None else v.margin for v in self._verdicts(X)]
        return np.asarray(margins, dtype=float).reshape(-1, 1)

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)
