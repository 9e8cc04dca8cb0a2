"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all workbench-specific errors."""


class PoleError(WorkbenchError):
    """Evaluation requested exactly at a pole of the function."""


class BudgetExceededError(WorkbenchError):
    """An accuracy budget (term count / certified bound) could not be met."""


class ToleranceError(WorkbenchError):
    """A quadrature could not certify the requested tolerance."""


class TailBoundError(WorkbenchError):
    """A truncation tail could not be certified below the requested tolerance."""


class CountMismatchError(WorkbenchError):
    """Zero count disagrees with the argument-principle count after refinement."""


class SupportError(WorkbenchError):
    """Invalid or unusable support interval for a test function."""


class InternalConsistencyError(WorkbenchError):
    """Two internal computation paths that must agree did not."""


class CacheMismatchError(WorkbenchError):
    """A zero-cache header does not match the requested character / height."""


class ZeroParseError(WorkbenchError):
    """A zero file could not be parsed; message names the offending line."""


class ConfigError(WorkbenchError):
    """Bad CLI flags or configuration file contents."""


class CertificateError(WorkbenchError):
    """A positivity tail certificate could not be established."""
