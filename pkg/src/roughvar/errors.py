"""Exception types shared across the toolkit.

Every error carries a short machine-readable ``code`` so the CLI and the
HTTP service can map failures onto exit statuses / response bodies without
string matching.
"""


class RoughVarError(Exception):
    code = "error"


class DomainError(RoughVarError):
    """Input outside the mathematical domain of an operation."""

    code = "domain"


class ResourceBudgetError(RoughVarError):
    """Request exceeds a configured size / memory budget."""

    code = "resource"


class SupportTooLargeError(ResourceBudgetError):
    """Unbounded support enumeration would exceed the entry cap."""

    code = "support_too_large"


class UnsupportedRegimeError(RoughVarError):
    """Parameters fall outside every implemented asymptotic regime."""

    code = "unsupported_regime"


class RangeRefusedError(RoughVarError):
    """Admissibility check failed and --force was not given."""

    code = "range_refused"


class TruncationError(RoughVarError):
    """Contour truncation cannot meet the requested tolerance.

    ``tail_bound`` is the bound on the discarded tail that triggered the
    refusal.
    """

    code = "truncation"

    def __init__(self, message, tail_bound=None):
        super().__init__(message)
        self.tail_bound = tail_bound
