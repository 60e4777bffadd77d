"""Exception hierarchy shared across the package."""


class WindCostError(Exception):
    """Base class for all package errors."""


class DomainError(WindCostError, ValueError):
    """An input lies outside the domain where a formula is defined."""


class NotApplicable(WindCostError):
    """A boundary does not exist for the given parameters.

    Raised when the power-independent part of the specific cost is not
    positive, so the model predicts negative cost for every rated power.
    """


class RankDeficient(WindCostError, ValueError):
    """The design matrix has linearly dependent columns."""


class NoViableCandidate(WindCostError):
    """Every basis assignment failed its domain or rank checks."""


class MalformedCsv(WindCostError, ValueError):
    """The CSV input cannot be parsed structurally."""
