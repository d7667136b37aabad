"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: ConfigError -> 2, DomainError -> 3,
IntegratorError -> 4.
"""


class DomainError(ValueError):
    """A physics parameter is outside the admissible domain."""


class InvalidStateError(DomainError):
    """A density matrix violates Hermiticity, unit trace or positivity."""


class ConfigError(ValueError):
    """A configuration file is malformed or carries unknown/invalid keys."""


class IntegratorError(RuntimeError):
    """A time integrator could not meet its tolerance (step underflow)."""
