"""Exception hierarchy shared by every qabn module."""


class QabnError(Exception):
    """Base class for all errors raised by qabn."""


class ArityError(QabnError, ValueError):
    pass


class DomainError(QabnError, ValueError):
    pass


class SpecParseError(QabnError, ValueError):
    """Malformed network description.

    ``line`` is the 1-based line number in a spec file, when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(QabnError):
    """A resource guard (qubit count, state-space size) was exceeded."""


class NumericalDomainError(QabnError, ValueError):
    pass
