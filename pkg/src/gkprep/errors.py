"""Exception types shared across the package.

Both derive from ValueError so generic callers can catch invalid input
uniformly, while the CLI maps each to its own exit code.
"""


class ParameterRangeError(ValueError):
    """A numeric parameter lies outside its documented domain."""


class EvenCodeLengthError(ValueError):
    """Repetition-code length must be odd; even n is rejected, not rounded."""
