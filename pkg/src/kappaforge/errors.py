"""Exception hierarchy shared by every kappaforge module."""


class KappaForgeError(Exception):
    """Base class for all library errors."""


class InvalidInputError(KappaForgeError, ValueError):
    """An argument violates the documented input contract."""


class EndpointCollisionError(InvalidInputError):
    """A finite interval endpoint is a root of the polynomial being counted.

    Callers are expected to nudge the endpoint by an exact rational and retry.
    """


class PreconditionError(KappaForgeError):
    """A theorem's hypotheses do not hold for the supplied instance."""
