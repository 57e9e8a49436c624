class DivisorSeriesError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(DivisorSeriesError, ValueError):
    """Malformed or inconsistent input (maps to CLI exit code 2)."""


class DegenerateError(InvalidInputError):
    def __init__(self, message, facet=None):
        super().__init__(message)
        self.facet = facet


class MalformedGraphError(InvalidInputError):
    pass


class ScopeError(DivisorSeriesError):
    """The input is valid but outside what can be computed exactly (exit code 3)."""


class IrrationalRootError(ScopeError):
    def __init__(self, message, facet=None):
        super().__init__(message)
        self.facet = facet


class TruncationError(ScopeError):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
