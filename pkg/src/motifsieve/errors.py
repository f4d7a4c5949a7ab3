"""Exception types shared across the package."""


class MotifError(Exception):
    """Base class for all errors raised by motifsieve."""


class ParameterError(MotifError, ValueError):
    """A numeric parameter is outside its admissible range."""


class GuardError(ParameterError):
    """An oracle or symbolic expansion was asked to run beyond its size guard."""


class InstanceError(MotifError, ValueError):
    """The instance is well-formed text but semantically invalid."""


class ParseError(MotifError, ValueError):
    """Syntax error in an instance or set-cover file."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
