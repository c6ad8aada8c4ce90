"""Exception types shared across the package."""


class ArtinLabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ArtinLabError):
    """A caller passed an unknown generator, malformed subset, or similar."""


class ModeError(ArtinLabError):
    """The requested oracle mode is not applicable to the given graph."""


class DegenerateDomainError(ArtinLabError):
    """The 2-labeled subgraph is connected, so the coset complex has no edges."""


class ParseError(ArtinLabError):
    """A document failed validation; carries a human-readable location."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
