"""Exhaustive basis-function model selection by training RMSE.

Each predictor is passed through one of ``x``, ``x**2``, ``ln x`` or
``sqrt x``; the transformed columns plus an intercept are fit by linear least
squares, and every assignment of bases to predictors is ranked by RMSE.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .errors import DomainError, NoViableCandidate, RankDeficient

__all__ = [
    "Basis",
    "Dataset",
    "LeastSquaresFit",
    "CandidateFit",
    "SkippedCandidate",
    "ModelSelection",
    "design_matrix",
    "fit_least_squares",
    "select_model",
    "polynomial_interpolation_demo",
    "make_synthetic_dataset",
    "BasisSelectionRegressor",
    "RANK_TOL",
    "CONDITION_LIMIT",
]

RANK_TOL = 1e-10
CONDITION_LIMIT = 1e8
MAX_INTERPOLATION_DEGREE = 12

# hub height (m), specific power (W/m^2), market age (yr)
SYNTHETIC_BOX = ((50.0, 150.0), (200.0, 600.0), (0.0, 16.0))


class Basis(enum.Enum):
    IDENTITY = "identity"
    SQUARE = "square"
    LOG = "log"
    SQRT = "sqrt"

    @property
    def rank(self) -> int:
        return _BASIS_ORDER[self]

    @classmethod
    def parse(cls, name: str) -> "Basis":
        key = name.strip().lower()
        aliases = {"x": "identity", "linear": "identity", "x2": "square", "ln": "log"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise DomainError(f"unknown basis {name!r}; choose from {[b.value for b in cls]}") from None

    def domain_violation(self, x: np.ndarray) -> Optional[int]:
        """Index of the first element outside this basis' domain, else None."""
        if self is Basis.LOG:
            bad = np.flatnonzero(~(x > 0))
        elif self is Basis.SQRT:
            bad = np.flatnonzero(~(x >= 0))
        else:
            bad = np.flatnonzero(~np.isfinite(x))
        return int(bad[0]) if bad.size else None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx = self.domain_violation(x.ravel())
        if idx is not None:
            raise DomainError(f"{self.value} undefined at {x.ravel()[idx]!r}")
        if self is Basis.IDENTITY:
            return x.copy()
        if self is Basis.SQUARE:
            return x * x
        if self is Basis.LOG:
            return np.log(x)
        return np.sqrt(x)


_BASIS_ORDER = {b: i for i, b in enumerate(Basis)}


@dataclass(frozen=True)
class Dataset:
    predictors: np.ndarray  # (n_rows, n_predictors)
    response: np.ndarray  # (n_rows,)
    column_names: Tuple[str, ...] = ()

    def __post_init__(self):
        X = np.asarray(self.predictors, dtype=float)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        y = np.asarray(self.response, dtype=float).ravel()
        if X.ndim != 2:
            raise DomainError("predictors must be a 2-D array")
        if X.shape[0] != y.shape[0]:
            raise DomainError(f"{X.shape[0]} predictor rows but {y.shape[0]} responses")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise DomainError("dataset contains non-finite values")
        names = tuple(self.column_names) or tuple(f"x{j}" for j in range(X.shape[1]))
        if len(names) != X.shape[1]:
            raise DomainError(f"{len(names)} column names for {X.shape[1]} predictors")
        object.__setattr__(self, "predictors", X)
        object.__setattr__(self, "response", y)
        object.__setattr__(self, "column_names", names)

    @property
    def n_rows(self) -> int:
        return self.predictors.shape[0]

    @property
    def n_predictors(self) -> int:
        return self.predictors.shape[1]


@dataclass(frozen=True)
class LeastSquaresFit:
    coefficients: np.ndarray
    rmse: float
    condition_warning: bool
    condition_number: float


@dataclass(frozen=True)
class CandidateFit:
    basis_assignment: Tuple[Basis, ...]
    coefficients: Tuple[float, ...]
    intercept: float
    rmse: float
    condition_warning: bool = False

    def sort_key(self):
        return (self.rmse, tuple(b.rank for b in self.basis_assignment))

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        cols = [basis(X[:, j]) for j, basis in enumerate(self.basis_assignment)]
        return np.column_stack(cols) @ np.asarray(self.coefficients) + self.intercept

    def to_dict(self, column_names: Sequence[str] = ()) -> dict:
        names = list(column_names) or [f"x{j}" for j in range(len(self.basis_assignment))]
        return {
            "bases": {n: b.value for n, b in zip(names, self.basis_assignment)},
            "coefficients": {n: c for n, c in zip(names, self.coefficients)},
            "intercept": self.intercept,
            "rmse": self.rmse,
            "condition_warning": self.condition_warning,
        }


@dataclass(frozen=True)
class SkippedCandidate:
    basis_assignment: Tuple[Basis, ...]
    reason: str


@dataclass
class ModelSelection:
    """Outcome of :func:`select_model`: ranked fits plus skipped assignments."""

    candidates: List[CandidateFit]
    skipped: List[SkippedCandidate] = field(default_factory=list)
    column_names: Tuple[str, ...] = ()

    @property
    def attempted(self) -> int:
        return len(self.candidates) + len(self.skipped)

    @property
    def best(self) -> CandidateFit:
        return self.candidates[0]

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self):
        return len(self.candidates)

    def __getitem__(self, i):
        return self.candidates[i]


def design_matrix(data: Dataset, assignment: Sequence[Basis]) -> np.ndarray:
    """Transformed predictor columns followed by a column of ones."""
    if len(assignment) != data.n_predictors:
        raise DomainError(f"{len(assignment)} bases for {data.n_predictors} predictors")
    cols = []
    for j, basis in enumerate(assignment):
        x = data.predictors[:, j]
        row = basis.domain_violation(x)
        if row is not None:
            raise DomainError(
                f"{basis.value} basis undefined for column {data.column_names[j]!r} "
                f"at row {row} (value {x[row]!r})"
            )
        cols.append(basis(x))
    cols.append(np.ones(data.n_rows))
    return np.column_stack(cols)


def fit_least_squares(design, response, rank_tol: float = RANK_TOL) -> LeastSquaresFit:
    """Least squares via column-pivoted Householder QR on an equilibrated design.

    Columns are scaled to unit norm before factorization; the rank test and
    condition estimate are taken on the scaled triangular factor.
    """
    A = np.asarray(design, dtype=float)
    y = np.asarray(response, dtype=float).ravel()
    n, k = A.shape
    if n < k:
        raise RankDeficient(f"{n} rows cannot determine {k} coefficients")
    if y.shape[0] != n:
        raise DomainError(f"design has {n} rows but response has {y.shape[0]}")

    scale = np.linalg.norm(A, axis=0)
    if np.any(scale == 0):
        raise RankDeficient(f"design column {int(np.flatnonzero(scale == 0)[0])} is identically zero")
    As = A / scale
    Q, R, perm = scipy.linalg.qr(As, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[-1] <= rank_tol * diag[0]:
        raise RankDeficient(
            f"design column {int(perm[-1])} is linearly dependent on the others "
            f"(|R_kk|/|R_00| = {diag[-1] / diag[0]:.3e})"
        )
    z = scipy.linalg.solve_triangular(R, Q.T @ y)
    beta = np.empty(k)
    beta[perm] = z
    beta /= scale

    residual = y - A @ beta
    rmse = math.sqrt(float(np.mean(residual**2))) if n else 0.0
    cond = float(np.linalg.cond(R))
    return LeastSquaresFit(beta, rmse, cond > CONDITION_LIMIT, cond)


def _normalize_bases(allowed_bases: Optional[Iterable]) -> List[Basis]:
    if allowed_bases is None:
        return list(Basis)
    chosen = {b if isinstance(b, Basis) else Basis.parse(b) for b in allowed_bases}
    if not chosen:
        raise DomainError("at least one basis must be allowed")
    return sorted(chosen, key=lambda b: b.rank)


def select_model(data: Dataset, allowed_bases: Optional[Iterable] = None) -> ModelSelection:
    """Fit every assignment of allowed bases to predictors and rank by RMSE.

    Assignments whose basis domain is violated by the data, or whose design is
    rank deficient, are recorded in ``skipped``. Ties in RMSE are broken by
    basis declaration order.
    """
    bases = _normalize_bases(allowed_bases)
    n_pred = data.n_predictors
    if data.n_rows < n_pred + 2:
        raise NoViableCandidate(f"need at least {n_pred + 2} rows for {n_pred} predictors, got {data.n_rows}")

    # Per-column domain checks are shared across assignments.
    transformed = {}
    for j in range(n_pred):
        x = data.predictors[:, j]
        for basis in bases:
            row = basis.domain_violation(x)
            if row is None:
                transformed[j, basis] = basis(x)
            else:
                transformed[j, basis] = (
                    f"{basis.value} undefined for column {data.column_names[j]!r} at row {row} (value {x[row]!r})"
                )

    ones = np.ones(data.n_rows)
    fits, skipped = [], []
    for assignment in itertools.product(bases, repeat=n_pred):
        cols = [transformed[j, b] for j, b in enumerate(assignment)]
        bad = [c for c in cols if isinstance(c, str)]
        if bad:
            skipped.append(SkippedCandidate(assignment, "domain: " + "; ".join(bad)))
            continue
        try:
            result = fit_least_squares(np.column_stack(cols + [ones]), data.response)
        except RankDeficient as exc:
            skipped.append(SkippedCandidate(assignment, f"rank: {exc}"))
            continue
        fits.append(
            CandidateFit(
                assignment,
                tuple(float(c) for c in result.coefficients[:-1]),
                float(result.coefficients[-1]),
                result.rmse,
                result.condition_warning,
            )
        )
    if not fits:
        raise NoViableCandidate(f"all {len(skipped)} basis assignments failed domain or rank checks")
    fits.sort(key=CandidateFit.sort_key)
    return ModelSelection(fits, skipped, data.column_names)


def _polynomial_lstsq(x: np.ndarray, y: np.ndarray, degree: int) -> Tuple[np.ndarray, float]:
    # Map x onto [-1, 1] and scale Vandermonde columns by their max magnitude;
    # the residual is evaluated in that well-conditioned basis.
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        raise DomainError("x values must not all coincide")
    t = (2.0 * x - (lo + hi)) / (hi - lo)
    V = np.vander(t, degree + 1, increasing=True)
    col_max = np.max(np.abs(V), axis=0)
    col_max[col_max == 0] = 1.0
    fit = fit_least_squares(V / col_max, y)
    poly = np.polynomial.Polynomial(fit.coefficients / col_max, domain=[lo, hi], window=[-1.0, 1.0])
    coefs = np.zeros(degree + 1)
    converted = poly.convert().coef
    coefs[: converted.size] = converted
    return coefs, fit.rmse


def polynomial_interpolation_demo(x, y) -> Tuple[np.ndarray, float]:
    """Fit the degree-n polynomial through n+1 points.

    Returns ascending-power coefficients in ``x`` and the training RMSE, which
    is zero up to rounding: any n+1 distinct points are interpolated exactly.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape or x.size < 2:
        raise DomainError("need at least two (x, y) pairs of equal length")
    if np.unique(x).size != x.size:
        raise DomainError("x values must be distinct")
    degree = x.size - 1
    if degree > MAX_INTERPOLATION_DEGREE:
        raise DomainError(f"degree {degree} exceeds conditioning guard {MAX_INTERPOLATION_DEGREE}")
    return _polynomial_lstsq(x, y, degree)


def polynomial_fit_rmse(x, y, degree: int) -> float:
    """Training RMSE of a least-squares polynomial of the given degree."""
    x = np.asarray(x, dtype=float).ravel()
    return _polynomial_lstsq(x, np.asarray(y, dtype=float).ravel(), degree)[1]


def make_synthetic_dataset(
    assignment: Sequence[Basis],
    coefficients: Sequence[float] = (620.0, -1.68, 182.0),
    intercept: float = -1005.0,
    n_rows: int = 200,
    rng=None,
    noise: float = 0.0,
) -> Dataset:
    """Noise-free (by default) data generated from a basis assignment.

    Predictors are hub height, specific power and market age drawn uniformly
    from a realistic turbine box.
    """
    rng = np.random.default_rng(rng)
    X = np.column_stack([rng.uniform(lo, hi, n_rows) for lo, hi in SYNTHETIC_BOX])
    y = sum(c * b(X[:, j]) for j, (b, c) in enumerate(zip(assignment, coefficients))) + intercept
    if noise:
        y = y + rng.normal(0.0, noise, n_rows)
    return Dataset(X, y, ("hub_height", "specific_power", "market_age"))


class BasisSelectionRegressor(RegressorMixin, BaseEstimator):
    """Regressor choosing the basis assignment with lowest training RMSE.

    Parameters
    ----------
    allowed_bases : iterable of Basis or str, default=None
        Bases to enumerate. ``None`` means all four.

    Attributes
    ----------
    selection_ : ModelSelection
    best_ : CandidateFit
    coef_ : ndarray of shape (n_features,)
    intercept_ : float
    """

    def __init__(self, allowed_bases=None):
        self.allowed_bases = allowed_bases

    def fit(self, X, y):
        X, y = validate_data(self, X, y, dtype=np.float64, y_numeric=True)
        names = getattr(self, "feature_names_in_", None)
        self.selection_ = select_model(
            Dataset(X, y, tuple(names) if names is not None else ()), self.allowed_bases
        )
        self.best_ = self.selection_.best
        self.coef_ = np.asarray(self.best_.coefficients)
        self.intercept_ = self.best_.intercept
        return self

    def predict(self, X):
        check_is_fitted(self, "best_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        return self.best_.predict(X)
