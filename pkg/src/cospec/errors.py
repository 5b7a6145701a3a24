"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """A mathematical precondition of an operation is violated."""


class CapExceededError(RuntimeError):
    """An exhaustive search was requested beyond its hard size cap."""
