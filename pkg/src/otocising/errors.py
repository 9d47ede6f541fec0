"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation accepts."""


class CapacityError(RuntimeError):
    """The requested system is too large for the chosen backend."""


class OutputError(OSError):
    """Reading or writing a result file failed."""
