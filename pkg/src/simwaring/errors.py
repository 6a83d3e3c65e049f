"""Exception hierarchy shared by every module."""


class SimWaringError(Exception):
    """Base class for all library errors."""


class ParseError(SimWaringError, ValueError):
    """Malformed monomial or collection text."""


class DimensionMismatch(SimWaringError, ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class HypothesisError(SimWaringError):
    """The input does not satisfy the hypotheses an operation relies on."""


class CapacityError(SimWaringError):
    """An enumeration or construction would exceed its configured size cap."""
