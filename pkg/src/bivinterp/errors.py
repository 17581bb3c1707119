class DomainError(ValueError):
    """Input violates a mathematical precondition (CLI exit code 1)."""


class NotPoisedError(DomainError):
    pass


class ConfigurationError(DomainError):
    """Invalid line/point configuration (BR step, lattice spec, maximal line)."""


class NotEquivalentError(DomainError):
    pass


class InternalCheckError(RuntimeError):
    """An exact post-condition failed; indicates a bug or invalid input data."""
