"""Exception hierarchy shared by all sensaudit modules."""


class SensAuditError(Exception):
    """Base class for every error raised by this package."""


class InputError(SensAuditError, ValueError):
    """An argument violates its contract (domain, shape, or type)."""


class CapabilityError(SensAuditError):
    """The request exceeds what this implementation supports."""


class InsufficientDataError(SensAuditError):
    """Too few observations for the requested statistic."""


class DegenerateOutputError(SensAuditError):
    """Model output carries no variance; sensitivity is undefined."""


class ModelFailure(SensAuditError):
    """Model evaluation failed at the batch level."""

    def __init__(self, message: str, failures=()):
        super().__init__(message)
        self.failures = list(failures)


class LinkageError(SensAuditError):
    """Evidence does not belong to the study it is being attached to."""


class ConfigError(SensAuditError):
    """Study configuration file is missing, malformed, or inconsistent."""
