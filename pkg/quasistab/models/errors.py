"""
Toolkit Errors
Exception hierarchy shared by services, handlers and the command line.
"""


class QuasistabError(Exception):
    """Base class for every error raised by the toolkit."""

    kind = "error"


class DomainError(QuasistabError, ValueError):
    """A precondition of an operation does not hold for the given graph or degrees."""

    kind = "domain"


class MalformedInputError(QuasistabError, ValueError):
    """A graph document or command-line value cannot be parsed."""

    kind = "malformed"


class ConsistencyError(QuasistabError, RuntimeError):
    """An internal invariant failed."""

    kind = "consistency"


class GenerationError(QuasistabError, RuntimeError):
    """Random graph generation ran out of attempts."""

    kind = "generation"
