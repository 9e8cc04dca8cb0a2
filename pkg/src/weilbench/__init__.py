"""weilbench: a numerical workbench for the explicit formula of zeta and
Dirichlet L-functions and the associated positivity search.

The package evaluates the three faces of the explicit formula — zero-side
sums, place-side local terms, and conductor-operator spectral integrals — and
runs the positivity procedure that searches for the admissible support radius
c of the test functions.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    CacheMismatchError,
    CertificateError,
    ConfigError,
    CountMismatchError,
    InternalConsistencyError,
    PoleError,
    SupportError,
    TailBoundError,
    ToleranceError,
    WorkbenchError,
    ZeroParseError,
)
from .special_functions import (
    AccuracyBudget,
    DEFAULT_BUDGET,
    digamma,
    hurwitz_zeta,
    log_gamma,
    riemann_siegel_theta,
    riemann_siegel_theta_deriv,
    riemann_siegel_Z,
)

__all__ = [
    "__version__",
    "AccuracyBudget",
    "DEFAULT_BUDGET",
    "log_gamma",
    "digamma",
    "riemann_siegel_theta",
    "riemann_siegel_theta_deriv",
    "riemann_siegel_Z",
    "hurwitz_zeta",
    "WorkbenchError",
    "PoleError",
    "BudgetExceededError",
    "ToleranceError",
    "TailBoundError",
    "CountMismatchError",
    "SupportError",
    "InternalConsistencyError",
    "CacheMismatchError",
    "ZeroParseError",
    "ConfigError",
    "CertificateError",
]
