"""Exception types raised across the package."""


class CommGraphError(Exception):
    """Base class for package errors."""


class DimensionError(CommGraphError, ValueError):
    """Operands have incompatible lengths or shapes."""


class DomainError(CommGraphError, ValueError):
    """An argument lies outside the range an operation is defined on."""


class CapacityError(CommGraphError, ValueError):
    """A request would exceed a configured size cap."""
