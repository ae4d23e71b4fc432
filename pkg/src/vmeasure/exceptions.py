"""Exception types shared by all modules."""


class DomainError(ValueError):
    """Arguments lie outside an operation's domain (shape, algebra, index range)."""


class ResourceError(RuntimeError):
    """A request exceeds a configured size cap."""
