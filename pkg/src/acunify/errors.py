"""Exception types shared by the whole package."""


class TermSyntaxError(ValueError):
    """Raised when term text cannot be parsed.

    ``pos`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at column {pos + 1})"
        super().__init__(message)


class ArityError(TermSyntaxError):
    pass


class UndeclaredSymbolError(TermSyntaxError):
    pass


class PreconditionError(ValueError):
    """An algorithm was called on input outside its supported class."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its configured bound.

    ``bound`` names the limit, ``flag`` the CLI option that raises it.
    """

    def __init__(self, message: str, *, bound: str, limit: int, required: int | None = None,
                 flag: str | None = None):
        self.bound = bound
        self.limit = limit
        self.required = required
        self.flag = flag
        hint = f"; raise it with {flag}" if flag else ""
        super().__init__(f"{message} [{bound}={limit}{hint}]")


class InvariantViolation(AssertionError):
    """An internal table invariant failed. Always a bug."""
