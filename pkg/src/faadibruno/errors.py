"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument is outside the documented domain of an operation."""


class DomainError(ValueError):
    """A function is evaluated where it (or its derivatives) is undefined,
    or where an exact value cannot be represented as a rational."""


class SyntaxProblem(ValueError):
    """Base for lexing and parsing failures; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class LexError(SyntaxProblem):
    pass


class ParseError(SyntaxProblem):
    pass
