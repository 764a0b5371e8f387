class FieldMismatchError(ValueError):
    """Operands live in different quadratic fields, or a required square root is missing."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegreeMismatchError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class BoundViolationError(ValueError):
    pass


class InconsistentInputError(ValueError):
    pass


class NoEnumeratorError(ValueError):
    pass


class DegenerateRingError(ValueError):
    pass


class CatalogError(ValueError):
    """Malformed catalog content. The message names the offending entry."""


class LiteralParseError(ValueError):
    """
    Malformed exact literal.

    Parameters
    ----------
    message : str
    text : str
        The string being parsed.
    position : int
        Offset into `text` where parsing failed.
    """

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f'{message} at position {position}: {text!r}')


class VerificationError(RuntimeError):
    """An exact self-check failed. Always a bug, never a user error."""
