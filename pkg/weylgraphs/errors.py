"""
Exception hierarchy for weylgraphs

Every failure the library reports is a WeylGraphError; the CLI catches the
base class and turns it into a nonzero exit status.
"""


class WeylGraphError(Exception):
    """Base class for all weylgraphs errors"""


class InputError(WeylGraphError, ValueError):
    """Malformed or out-of-range input (bad endpoints, illegal ranks, ...)"""


class UnsupportedInputError(InputError):
    """Input that is well-formed but outside what an operation handles"""


class ExprSyntaxError(InputError):
    """A graph expression that does not parse"""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class StructureError(WeylGraphError):
    """A graph lacks the structure an operation requires.

    `witness` holds whatever falsifies the requirement: a vertex, a vertex
    pair, an offending component.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ResourceError(WeylGraphError):
    """A size cap was exceeded"""
