"""Exception types shared across the package."""


class NandLabError(Exception):
    """Base class for all package errors."""


class AddressError(NandLabError, ValueError):
    """A node address is malformed or does not fit the instance."""


class DepthError(NandLabError, ValueError):
    """An instance has the wrong depth for the requested operation."""


class ParseError(NandLabError, ValueError):
    """An instance string could not be parsed."""


class EmbeddingError(NandLabError):
    """A rotation system is inconsistent or not planar."""


class NoFlowError(NandLabError):
    """The terminals are disconnected, so no unit flow exists."""


class SizeError(NandLabError, ValueError):
    """An input is too large for an enumeration-based routine."""


class ValidationError(NandLabError, ValueError):
    """A flow or witness fails its defining constraints."""


class PreconditionError(NandLabError):
    """An operation was called outside its precondition."""


class GenerateError(NandLabError):
    """An instance generator could not satisfy its constraints."""


class ConsistencyError(NandLabError):
    """Two independent computations that must agree did not."""
