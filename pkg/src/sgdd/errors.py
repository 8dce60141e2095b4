"""Exception hierarchy shared by all modules.

Certification *violations* are ordinary data (structured reports), not
exceptions.  Exceptions are reserved for broken preconditions, infeasible
parameters, exhausted search budgets and malformed files.
"""


class SgddError(Exception):
    """Base class for all library errors."""


class ParameterError(SgddError, ValueError):
    """Arguments violate a documented precondition or invariant."""


class DegenerateDesignError(ParameterError):
    """k equals lambda1: the design degenerates to a blown-up symmetric design."""


class InfeasibleParameterError(ParameterError):
    """A derived parameter fails an integrality or sign condition."""


class CertificationError(SgddError):
    """A constructed object failed its own certification (fail-closed)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BudgetExceededError(SgddError):
    """A search oracle was asked to exceed its desk-scale budget."""


class FormatError(SgddError, ValueError):
    """A file does not conform to its documented text format."""
