"""Exception types shared across the package."""


class RealzkError(Exception):
    """Base class for all package errors."""


class InvalidComplexError(RealzkError):
    """Malformed simplicial-complex input (bad vertex labels, bad file, ...)."""


class SizeLimitError(RealzkError):
    """A configured cap (vertex count, cell count) was exceeded."""


class ComplexInconsistencyError(RealzkError):
    """A cochain complex whose consecutive coboundaries do not compose to zero."""


class NotInSpanError(RealzkError):
    """A vector expected to lie in a span/quotient does not; indicates an upstream bug."""
