"""Exception hierarchy shared by the package."""


class RegconnError(Exception):
    """Base class for all package errors."""


class ParseError(RegconnError, ValueError):
    """Malformed ``.mg`` input.  ``line`` is 1-based when known."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class MalformedHeaderError(ParseError):
    pass


class NonSymmetricError(ParseError):
    pass


class NonzeroDiagonalError(ParseError):
    pass


class NegativeEntryError(ParseError):
    pass


class InvalidGraphError(RegconnError, ValueError):
    """A multiplicity matrix violates the multigraph invariants."""


class InvalidPartitionError(RegconnError, ValueError):
    pass


class InfeasibleError(RegconnError, ValueError):
    """No object with the requested parameters exists."""


class BudgetExhaustedError(RegconnError, RuntimeError):
    pass


class InapplicableError(RegconnError, ValueError):
    """Parameters fall outside a rule's or routine's domain."""


class TooLargeError(RegconnError, ValueError):
    """Input exceeds the size an exhaustive routine supports."""


class PropertyViolation(RegconnError, AssertionError):
    """A checked mathematical property failed.  Never swallowed."""
