"""Shared error types with CLI exit-code mapping."""


class BudgetExceeded(Exception):
    """A configured work budget would be exceeded; message carries the estimate."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class InstanceFormatError(ValueError):
    """Malformed instance file or structure data."""


class InfeasibleInstance(Exception):
    """Distinguished outcome for instances with no finite-value assignment."""


class InternalCheckFailed(AssertionError):
    """A post-hoc validation that must never fail did; report as a bug."""
