"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A constructor or operation was called with out-of-contract arguments."""


class ResourceLimitError(RuntimeError):
    """A computation exceeds the configured size caps.

    The message always names the cap and how to raise it.
    """


class PrecisionExhaustedError(RuntimeError):
    """The precision ladder reached its cap without separating enclosures."""


class ParseError(ValueError):
    """Input text could not be parsed.  Carries the 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")
