"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """An argument is malformed or out of range."""


class StateError(RuntimeError):
    """An input object does not satisfy an operation's precondition."""


class ResourceError(RuntimeError):
    """A requested computation exceeds the configured size bound."""
