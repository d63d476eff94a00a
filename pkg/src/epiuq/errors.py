"""Exception types shared across the package."""


class EpiUQError(Exception):
    """Base class for all package errors."""


class DomainError(EpiUQError, ValueError):
    """An argument lies outside the domain of a formula."""


class ConfigError(EpiUQError, ValueError):
    """A configuration object is malformed or inconsistent."""


class InsufficientSampleError(EpiUQError):
    """Too few accepted draws to form a summary."""

    def __init__(self, message, n_accepted=0, n_total=0):
        super().__init__(message)
        self.n_accepted = n_accepted
        self.n_total = n_total

    @property
    def acceptance_rate(self):
        return self.n_accepted / self.n_total if self.n_total else 0.0


class StepSizeError(EpiUQError):
    """An ODE step produced a negative compartment; retry with a smaller dt."""
