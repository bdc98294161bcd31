"""Exception types shared across the toolkit."""


class ParseError(ValueError):
    """Malformed election or graph file; carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured oracle cap."""


class CommitteeSizeError(ValueError):
    """A committee does not have exactly the instance's committee size."""


class InfeasibleError(RuntimeError):
    """No committee satisfies the constraints."""
