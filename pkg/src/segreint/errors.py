"""Exception hierarchy; ``exit_code`` is what the CLI returns for each."""


class SegreintError(Exception):
    exit_code = 1


class ParseError(SegreintError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = ":".join(str(x) for x in (source, line, column) if x is not None)
        super().__init__(f"{where}: {message}" if where else message)


class GenericityFailure(SegreintError):
    """Random scalars produced a visibly non-generic intersection chain."""

    exit_code = 3


class NegativeNumerator(GenericityFailure):
    """A stabilized zeta numerator had a negative coefficient."""


class NotStabilized(SegreintError):
    exit_code = 4

    def __init__(self, message: str, candidates=None):
        self.candidates = candidates
        super().__init__(message)


class PreconditionError(SegreintError, ValueError):
    exit_code = 5
