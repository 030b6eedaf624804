"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An input violates an operation's precondition."""


class ResourceLimit(RuntimeError):
    """A configured size, node or time budget was exceeded."""


class ParseError(ValueError):
    """Malformed text input (pattern spec, graph file, DIMACS)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position
