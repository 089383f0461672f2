"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class OracleLimitError(ValidationError):
    """An instance is too large for the brute-force oracle."""


class UnknownAlgorithmError(ValidationError):
    """An algorithm name is not registered."""


class ParseError(ValueError):
    """A family/collection file is malformed; the message names the location."""
