"""Exception types shared across the package."""


class SubstrateError(Exception):
    """Base class for every domain error raised by this package."""


class ScopeError(SubstrateError):
    """A variable index escapes its local context."""

    def __init__(self, index, context_size=None):
        self.index = index
        self.context_size = context_size
        if context_size is None:
            msg = f"variable index {index} must be a positive position"
        else:
            msg = f"variable index {index} out of range 1..{context_size}"
        super().__init__(msg)


class ModeViolation(SubstrateError):
    """A usage count or map shape breaks the discipline of the active mode.

    `position`, `count`, `required` are filled in when the violation is a
    per-position occurrence-count failure; map-shape failures (for example a
    non-bijective map handed to a linear renaming) carry only the message.
    """

    def __init__(self, message, position=None, count=None, required=None):
        self.position = position
        self.count = count
        self.required = required
        super().__init__(message)

    @classmethod
    def for_count(cls, position, count, required):
        return cls(
            f"position {position} occurs {count} time(s); {required}",
            position=position,
            count=count,
            required=required,
        )


class CapabilityError(SubstrateError):
    """A structural rule was requested in a mode that does not provide it."""


class SignatureSyntaxError(SubstrateError):
    """The textual signature format was violated."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class TermSyntaxError(SubstrateError):
    """The textual term format was violated."""


class LimitExceeded(SubstrateError):
    """A requested bound exceeds the configured ceiling."""
