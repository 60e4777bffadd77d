"""Specific and total investment cost of a wind turbine.

The model is a linear combination of ``ln(hub_height)``, specific power
``p / (r**2 * pi)`` and ``sqrt(market_age)`` plus an intercept. Specific cost
is expressed per kW of rated capacity; rated power enters in watts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError

__all__ = [
    "TurbineSpec",
    "CostModel",
    "PUBLISHED_MODEL",
    "specific_cost",
    "total_cost",
    "total_cost_derivative_p",
    "power_independent_cost",
    "specific_power_slope",
    "swept_area",
]


@dataclass(frozen=True)
class TurbineSpec:
    """Physical parameters of one turbine.

    ``market_age`` is in years before the reference year and may be negative
    here; every cost operation rejects negative ages.
    """

    hub_height: float  # m
    rotor_diameter: float  # m
    rated_power: float  # W
    market_age: float  # yr
    label: Optional[str] = None

    def __post_init__(self):
        for name in ("hub_height", "rotor_diameter", "rated_power"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be finite and > 0, got {value!r}")
        if not math.isfinite(self.market_age):
            raise DomainError(f"market_age must be finite, got {self.market_age!r}")

    @property
    def rotor_radius(self) -> float:
        return self.rotor_diameter / 2.0

    @property
    def specific_power(self) -> float:
        """Rated power per swept rotor area, W/m^2."""
        return self.rated_power / swept_area(self.rotor_diameter)

    def replace(self, **changes) -> "TurbineSpec":
        fields = dict(
            hub_height=self.hub_height,
            rotor_diameter=self.rotor_diameter,
            rated_power=self.rated_power,
            market_age=self.market_age,
            label=self.label,
        )
        fields.update(changes)
        return TurbineSpec(**fields)


@dataclass(frozen=True)
class CostModel:
    """Coefficients of the specific-cost regression.

    ``coef_specific_power`` multiplies ``p / (r**2 * pi)`` with ``p`` in W.
    """

    coef_hh: float = 620.0
    coef_specific_power: float = -1.68
    coef_age: float = 182.0
    intercept: float = -1005.0
    currency_unit: str = "EUR/kW"

    def __post_init__(self):
        for name in ("coef_hh", "coef_specific_power", "coef_age", "intercept"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    def to_dict(self) -> dict:
        return {
            "coef_hh": self.coef_hh,
            "coef_specific_power": self.coef_specific_power,
            "coef_age": self.coef_age,
            "intercept": self.intercept,
            "currency_unit": self.currency_unit,
        }


PUBLISHED_MODEL = CostModel()


def swept_area(rotor_diameter: float) -> float:
    r = rotor_diameter / 2.0
    return r * r * math.pi


def _check_geometry(hub_height: float, rotor_diameter: float, market_age: float) -> None:
    if not math.isfinite(hub_height) or hub_height <= 0:
        raise DomainError(f"hub_height must be finite and > 0, got {hub_height!r}")
    if not math.isfinite(rotor_diameter) or rotor_diameter <= 0:
        raise DomainError(f"rotor_diameter must be finite and > 0, got {rotor_diameter!r}")
    if not math.isfinite(market_age):
        raise DomainError(f"market_age must be finite, got {market_age!r}")
    if market_age < 0:
        raise DomainError(
            f"market_age must be >= 0 (square root of negative age {market_age!r}); "
            "turbines newer than the reference year are outside the model domain"
        )


def power_independent_cost(model: CostModel, hub_height: float, market_age: float) -> float:
    """The part of specific cost that does not depend on rated power.

    Caller is responsible for domain checks.
    """
    return model.coef_hh * math.log(hub_height) + model.coef_age * math.sqrt(market_age) + model.intercept


def specific_power_slope(model: CostModel, rotor_diameter: float) -> float:
    """d(specific cost)/dp in currency per kW per W."""
    return model.coef_specific_power / swept_area(rotor_diameter)


def specific_cost(model: CostModel, spec: TurbineSpec) -> float:
    """Investment cost per kW of rated capacity.

    Raises DomainError for negative market age.
    """
    _check_geometry(spec.hub_height, spec.rotor_diameter, spec.market_age)
    return (
        model.coef_hh * math.log(spec.hub_height)
        + model.coef_specific_power * spec.rated_power / swept_area(spec.rotor_diameter)
        + model.coef_age * math.sqrt(spec.market_age)
        + model.intercept
    )


def total_cost(model: CostModel, spec: TurbineSpec) -> float:
    """Rated power in kW times specific cost."""
    return spec.rated_power / 1000.0 * specific_cost(model, spec)


def total_cost_derivative_p(model: CostModel, spec: TurbineSpec) -> float:
    """Analytic d(total_cost)/d(rated_power), currency per W.

    With ``A`` the power-independent bracket and ``B`` the specific-power slope,
    ``total_cost = p * (A + B p) / 1000`` so the derivative is
    ``(A + 2 B p) / 1000``.
    """
    _check_geometry(spec.hub_height, spec.rotor_diameter, spec.market_age)
    a = power_independent_cost(model, spec.hub_height, spec.market_age)
    b = specific_power_slope(model, spec.rotor_diameter)
    return (a + 2.0 * b * spec.rated_power) / 1000.0
