"""Exception hierarchy.

Input problems derive from :class:`InputError`; violations of internal
invariants (which indicate a bug rather than bad data) derive from
:class:`InternalError`.
"""


class ToricError(Exception):
    pass


class InputError(ToricError, ValueError):
    pass


class InternalError(ToricError, RuntimeError):
    pass


class EmptyMatrix(InputError):
    pass


class AllOnesNotInRowSpace(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonCanonical(InputError):
    pass


class SpecInvalid(InputError):
    pass


class InternalBlockMismatch(InternalError):
    pass


class NegativePolarDegree(InternalError):
    pass


class AllZero(InternalError):
    pass
