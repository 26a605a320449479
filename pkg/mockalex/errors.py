class MockAlexError(Exception):
    """Base class for every error raised by mockalex."""


class PolyError(MockAlexError, ValueError):
    pass


class DiagramError(MockAlexError, ValueError):
    """Invalid diagram document or surgery request.

    `location` points into the document (e.g. ``edges[3].from``) when the
    error comes from parsing.
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class StarError(MockAlexError, ValueError):
    pass


class MoveError(MockAlexError, ValueError):
    """The requested move site is not legal in this diagram."""


class InternalConsistencyError(MockAlexError, RuntimeError):
    """An identity that holds for every valid input was violated. This is a bug."""
