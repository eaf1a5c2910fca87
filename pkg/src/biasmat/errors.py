"""Exception types shared across the package."""


class BiasmatError(Exception):
    """Base class for all biasmat errors."""


class InputError(BiasmatError, ValueError):
    """An argument violates the documented precondition of an operation."""


class BudgetError(BiasmatError):
    """A search or enumeration exceeded its configured budget."""


class InternalError(BiasmatError, RuntimeError):
    """A post-hoc verification failed; indicates a bug or a violated upstream invariant."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", col {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(ParseError):
    """The text parsed but describes an invalid object (e.g. theta property fails)."""

    def __init__(self, message: str, line: int | None = None, theta=None):
        self.theta = theta
        super().__init__(message, line)
