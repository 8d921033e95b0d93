"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A model or run parameter is outside its valid domain."""


class GraphFileError(ValueError):
    """A graph file is malformed, truncated or fails validation."""


class DecompositionError(ArithmeticError):
    """The band decomposition cannot be constructed for these parameters."""
