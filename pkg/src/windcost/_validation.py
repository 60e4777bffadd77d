import numpy as np
from sklearn.utils.validation import check_array

from .errors import DomainError

TURBINE_COLUMNS = ("hub_height_m", "rated_power_w", "rotor_diameter_m", "market_age_yr")


def check_turbine_array(X, allow_negative_age=False):
    """Validate an (n, 4) array of hub height, rated power, rotor diameter, age."""
    X = check_array(X, dtype=np.float64, ensure_all_finite=True)
    if X.shape[1] != len(TURBINE_COLUMNS):
        raise DomainError(f"expected {len(TURBINE_COLUMNS)} columns {TURBINE_COLUMNS}, got {X.shape[1]}")
    for j, name in enumerate(TURBINE_COLUMNS[:3]):
        bad = np.flatnonzero(X[:, j] <= 0)
        if bad.size:
            raise DomainError(f"column {name} must be > 0 (row {bad[0]})")
    if not allow_negative_age:
        bad = np.flatnonzero(X[:, 3] < 0)
        if bad.size:
            raise DomainError(f"column market_age_yr must be >= 0 (row {bad[0]})")
    return X
