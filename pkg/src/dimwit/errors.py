"""Exception types shared across the package."""


class DimwitError(Exception):
    """Base class for all package errors."""


class DimensionError(DimwitError, ValueError):
    """Shapes or Hilbert-space dimensions do not match."""


class InvariantViolation(DimwitError, ValueError):
    """An input violates a documented invariant (norm, hermiticity, sign...)."""


class NotFound(DimwitError, KeyError):
    """Unknown catalog name or experiment id."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class TooLarge(DimwitError):
    """Enumeration would exceed the configured guard limit."""


class MissingData(DimwitError, ValueError):
    """A count record needed for estimation is absent or empty."""


class ParseError(DimwitError, ValueError):
    """A data file does not conform to its schema."""


class NotRepresentable(DimwitError, ValueError):
    """A state cannot be produced by the half-wave-plate preparation."""
