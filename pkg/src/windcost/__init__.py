"""Wind turbine investment cost model with plausibility and model-selection audits."""

__version__ = "0.1.0"

from .cost_model import (  # noqa: E402
    PUBLISHED_MODEL,
    CostModel,
    TurbineSpec,
    specific_cost,
    total_cost,
    total_cost_derivative_p,
)
from .errors import (  # noqa: E402
    DomainError,
    MalformedCsv,
    NoViableCandidate,
    NotApplicable,
    RankDeficient,
    WindCostError,
)
from .plausibility import (  # noqa: E402
    Category,
    PlausibilityClassifier,
    PlausibilityVerdict,
    classify,
    critical_power,
    region_sweep,
    sensitivity,
    zero_cost_power,
)
from .regression import Basis, BasisSelectionRegressor, Dataset, select_model  # noqa: E402

__all__ = [
    "__version__",
    "PUBLISHED_MODEL",
    "CostModel",
    "TurbineSpec",
    "specific_cost",
    "total_cost",
    "total_cost_derivative_p",
    "DomainError",
    "MalformedCsv",
    "NoViableCandidate",
    "NotApplicable",
    "RankDeficient",
    "WindCostError",
    "Category",
    "PlausibilityClassifier",
    "PlausibilityVerdict",
    "classify",
    "critical_power",
    "region_sweep",
    "sensitivity",
    "zero_cost_power",
    "Basis",
    "BasisSelectionRegressor",
    "Dataset",
    "select_model",
]
